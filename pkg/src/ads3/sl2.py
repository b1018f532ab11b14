"""2x2 matrix algebra for SL(2,R) viewed as anti-de Sitter 3-space.

Points are plain ``numpy`` arrays of shape (2, 2).  Coordinates of the ambient
R^4_2 are the entries read row-major, (x1, x2, x3, x4) = (a11, a12, a21, a22),
and the ambient quadratic form is ``Q(x) = -det(x)``, of signature (2, 2).
"""
from __future__ import annotations

import enum
import math
from typing import Sequence

import numpy as np

from .errors import NonPositiveDeterminant

DEFAULT_TOL = 1e-9
PARABOLIC_BAND = 1e-9
# below this |det M| the exponential uses I + M + M^2/2
TAYLOR_SWITCH = 1e-12
DEFAULT_RANGES = (2.0 * math.pi, 2.0, 2.0)

I2 = np.eye(2)
X = np.array([[1.0, 0.0], [0.0, -1.0]])
Y = np.array([[0.0, 1.0], [0.0, 0.0]])
Z = np.array([[0.0, -1.0], [1.0, 0.0]])
ZERO = np.zeros((2, 2))
J = np.array([[0.0, 1.0], [-1.0, 0.0]])
E11 = np.array([[1.0, 0.0], [0.0, 0.0]])
E12 = Y.copy()
E21 = np.array([[0.0, 0.0], [1.0, 0.0]])
E22 = np.array([[0.0, 0.0], [0.0, 1.0]])

# Gram matrix of b_form in the basis E11, E12, E21, E22
AMBIENT_GRAM = 0.5 * np.array(
    [[0.0, 0.0, 0.0, -1.0],
     [0.0, 0.0, 1.0, 0.0],
     [0.0, 1.0, 0.0, 0.0],
     [-1.0, 0.0, 0.0, 0.0]]
)


class ElementClass(str, enum.Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"
    CENTRAL = "Central"


def mat(a11: float, a12: float, a21: float, a22: float) -> np.ndarray:
    return np.array([[a11, a12], [a21, a22]], dtype=float)


def det(m: np.ndarray) -> float:
    return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def q_form(v: np.ndarray) -> float:
    """Ambient quadratic form, ``-det(v)``."""
    return -det(v)


def b_form(u: np.ndarray, v: np.ndarray) -> float:
    """Symmetric bilinear form polarizing :func:`q_form`."""
    return -0.5 * float(
        u[0, 0] * v[1, 1] + v[0, 0] * u[1, 1] - u[0, 1] * v[1, 0] - v[0, 1] * u[1, 0]
    )


def q_form_rows(vs: np.ndarray) -> np.ndarray:
    """Vectorized :func:`q_form` over an (m, 4) array of flattened matrices."""
    return -(vs[:, 0] * vs[:, 3] - vs[:, 1] * vs[:, 2])


def adj(m: np.ndarray) -> np.ndarray:
    """Adjugate; equals the inverse for det = 1."""
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def inv(m: np.ndarray) -> np.ndarray:
    return adj(m) / det(m)


def bracket(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def exp_traceless(m: np.ndarray) -> np.ndarray:
    """Closed-form exponential of a traceless 2x2 matrix.

    Uses ``M^2 = -det(M) I``, so ``exp(M) = c I + s M`` with hyperbolic or
    trigonometric ``(c, s)`` depending on the sign of ``det(M)``.  The
    hyperbolic case is evaluated as ``e^r P+ + e^-r P-`` with the spectral
    projectors ``P+- = (r I +- M) / 2r``, which keeps the small diagonal
    entry accurate (``cosh r - sinh r`` cancels).
    """
    m = np.asarray(m, dtype=float)
    d = det(m)
    if abs(d) < TAYLOR_SWITCH:
        return I2 + m + 0.5 * (m @ m)
    if d < 0:
        r = math.sqrt(-d)
        a, off = m[0, 0], m[0, 1] * m[1, 0]
        # r^2 - a^2 = m12 m21, so the cancelling difference is rewritten
        if a >= 0:
            rp = r + a
            rm = off / rp
        else:
            rm = r - a
            rp = off / rm
        ep, em = math.exp(r), math.exp(-r)
        sh = (ep - em) / (2 * r) if r > 1e-3 else math.sinh(r) / r
        return np.array([
            [(ep * rp + em * rm) / (2 * r), sh * m[0, 1]],
            [sh * m[1, 0], (ep * rm + em * rp) / (2 * r)],
        ])
    r = math.sqrt(d)
    return math.cos(r) * I2 + (math.sin(r) / r) * m


def a_t(t: float) -> np.ndarray:
    return np.array([[math.exp(t), 0.0], [0.0, math.exp(-t)]])


def n_t(t: float) -> np.ndarray:
    return np.array([[1.0, t], [0.0, 1.0]])


def k_t(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s], [s, c]])


def f_ts(t: float, s: float) -> np.ndarray:
    """Upper-triangular ``A_t + s E12``, the generic element of Aff0(R)."""
    return np.array([[math.exp(t), s], [0.0, math.exp(-t)]])


def is_identity_like(p: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True when p = I or p = -I entrywise within tol."""
    return bool(np.max(np.abs(p - I2)) <= tol or np.max(np.abs(p + I2)) <= tol)


def element_class(p: np.ndarray, tol: float = DEFAULT_TOL) -> ElementClass:
    if is_identity_like(p, tol):
        return ElementClass.CENTRAL
    gap = abs(p[0, 0] + p[1, 1]) - 2.0
    if abs(gap) <= PARABOLIC_BAND:
        return ElementClass.PARABOLIC
    return ElementClass.ELLIPTIC if gap < 0 else ElementClass.HYPERBOLIC


def project_to_ads(m: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Rescale a positive-determinant matrix onto det = 1."""
    m = np.asarray(m, dtype=float)
    d = det(m)
    if d <= 0:
        raise NonPositiveDeterminant(f"det = {d:.6g} <= 0; matrix is not projectable onto adS3")
    if abs(d - 1.0) <= tol:
        return m
    return m / math.sqrt(d)


def points_equal(p: np.ndarray, q: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Entrywise comparison; p and -p are distinct points."""
    return bool(np.max(np.abs(p - q)) <= tol)


def iwasawa(theta: float, t: float, s: float) -> np.ndarray:
    return k_t(theta) @ a_t(t) @ n_t(s)


def sample_point(
    rng_seed: int | Sequence[int],
    ranges: tuple[float, float, float] = DEFAULT_RANGES,
) -> np.ndarray:
    """Deterministic random point ``K_theta A_t N_s``.

    ``ranges = (theta_max, t_max, s_max)``: theta is uniform on
    [0, theta_max), t on [-t_max, t_max] and s on [-s_max, s_max].
    """
    rng = np.random.default_rng(rng_seed)
    theta = rng.uniform(0.0, ranges[0])
    t = rng.uniform(-ranges[1], ranges[1])
    s = rng.uniform(-ranges[2], ranges[2])
    return iwasawa(theta, t, s)


# rotations by multiples of pi/2, exact
_QUARTER_TURNS = (I2, Z, -I2, -Z)


def sample_stratum_point(
    rng_seed: int | Sequence[int],
    ranges: tuple[float, float, float] = DEFAULT_RANGES,
) -> np.ndarray:
    """Random point with a zero entry: an exact quarter turn times ``A_t N_s``.

    Quarter turns 0 and pi give upper-triangular points (p21 = 0); the other
    two give p11 = 0.  Survey uses these to populate measure-zero strata.
    """
    rng = np.random.default_rng(rng_seed)
    k = _QUARTER_TURNS[int(rng.integers(0, 4))]
    t = rng.uniform(-ranges[1], ranges[1])
    s = rng.uniform(-ranges[2], ranges[2])
    return k @ a_t(t) @ n_t(s)


def sign(x: float, tol: float = DEFAULT_TOL) -> str:
    """Three-valued sign with a zero band of width tol."""
    if abs(x) <= tol:
        return "0"
    return "+" if x > 0 else "-"
