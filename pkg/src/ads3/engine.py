"""Group-agnostic infinitesimal orbit data.

Everything here is computed from the Lie algebra basis alone: the tangent
vectors ``V p - p W`` of the orbit through p, their rank (orbit dimension),
the kernel (stabilizer algebra) and the restriction of the ambient form to
the tangent span.  The closed-form classifiers are checked against this.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np

from . import sl2
from .catalog import GroupLabel, spec
from .errors import DimensionOutOfRange, UnexpectedSignature



class CausalCharacter(str, enum.Enum):
    POINT0 = "Point0"
    SPACELIKE_CURVE = "SpacelikeCurve"
    LIGHTLIKE_CURVE = "LightlikeCurve"
    TIMELIKE_CURVE = "TimelikeCurve"
    SPACELIKE_SURFACE = "SpacelikeSurface"
    LORENTZIAN_SURFACE = "LorentzianSurface"
    DEGENERATE_SURFACE = "DegenerateSurface"
    OPEN3 = "Open3"

    @property
    def dimension(self) -> int:
        return _CHAR_DIM[self]


_CHAR_DIM = {
    CausalCharacter.POINT0: 0,
    CausalCharacter.SPACELIKE_CURVE: 1,
    CausalCharacter.LIGHTLIKE_CURVE: 1,
    CausalCharacter.TIMELIKE_CURVE: 1,
    CausalCharacter.SPACELIKE_SURFACE: 2,
    CausalCharacter.LORENTZIAN_SURFACE: 2,
    CausalCharacter.DEGENERATE_SURFACE: 2,
    CausalCharacter.OPEN3: 3,
}


@dataclass(frozen=True)
class GramForm:
    entries: np.ndarray
    signature: tuple[int, int, int]  # (n_plus, n_minus, n_zero)


def tangent_basis(label: GroupLabel | str, p: np.ndarray) -> list[np.ndarray]:
    """One tangent vector ``V p - p W`` per Lie algebra basis pair."""
    return [v @ p - p @ w for v, w in spec(label).lie_basis]


def tangent_matrix(label: GroupLabel | str, p: np.ndarray) -> np.ndarray:
    """Tangent vectors flattened row-major into a (dim g, 4) array."""
    return np.stack([t.ravel() for t in tangent_basis(label, p)])


def _svd(label, p):
    return np.linalg.svd(tangent_matrix(label, p))


def _rank(s: np.ndarray, tol: float) -> int:
    if s.size == 0:
        return 0
    thresh = tol * max(float(s[0]), 1.0)
    return int(np.sum(s > thresh))


def orbit_dimension(label: GroupLabel | str, p: np.ndarray, tol: float = sl2.DEFAULT_TOL) -> int:
    _, s, _ = _svd(label, p)
    return _rank(s, tol)


def stabilizer_coefficients(
    label: GroupLabel | str, p: np.ndarray, tol: float = sl2.DEFAULT_TOL
) -> np.ndarray:
    """Orthonormal basis (rows) of the kernel of c -> sum c_i (V_i p - p W_i)."""
    u, s, _ = _svd(label, p)
    r = _rank(s, tol)
    return u[:, r:].T.copy()


def combine(label: GroupLabel | str, coef) -> tuple[np.ndarray, np.ndarray]:
    """Lie algebra element ``sum c_i (V_i, W_i)``."""
    basis = spec(label).lie_basis
    v = sum(c * b[0] for c, b in zip(coef, basis))
    w = sum(c * b[1] for c, b in zip(coef, basis))
    return np.asarray(v, dtype=float), np.asarray(w, dtype=float)


def stabilizer_algebra(
    label: GroupLabel | str, p: np.ndarray, tol: float = sl2.DEFAULT_TOL
) -> list[tuple[np.ndarray, np.ndarray]]:
    return [combine(label, c) for c in stabilizer_coefficients(label, p, tol)]


# Zero tests are certified against a forward roundoff bound instead of a
# fixed band: a value counts as zero only when it is indistinguishable from
# zero at the working precision.  Exact structural zeros stay exact and
# genuinely tiny values (e.g. quartic in a small entry) keep their sign.
ROUNDOFF_FACTOR = 32.0 * np.finfo(float).eps


def _raw(label, p):
    """Tangent vectors and their entrywise magnitude bounds, both (k, 4)."""
    ap = np.abs(p)
    vecs, mags = [], []
    for v, w in spec(label).lie_basis:
        vecs.append((v @ p - p @ w).ravel())
        mags.append((np.abs(v) @ ap + ap @ np.abs(w)).ravel())
    return np.array(vecs), np.array(mags)


def _b_rows(u, v):
    return -0.5 * (u[..., 0] * v[..., 3] + v[..., 0] * u[..., 3] - u[..., 1] * v[..., 2] - v[..., 1] * u[..., 2])


def _b_abs(u, v):
    return 0.5 * (u[..., 0] * v[..., 3] + v[..., 0] * u[..., 3] + u[..., 1] * v[..., 2] + v[..., 1] * u[..., 2])


def certified_sign(value: float, bound: float) -> int:
    if value > bound:
        return 1
    if value < -bound:
        return -1
    return 0


def _pivot(vecs: np.ndarray, r: int) -> list[int]:
    """Indices of r raw vectors spanning the tangent space (greedy pivoted Gram-Schmidt)."""
    chosen: list[int] = []
    resid = vecs.astype(float).copy()
    for _ in range(r):
        norms = np.linalg.norm(resid, axis=1)
        norms[chosen] = -1.0
        i = int(np.argmax(norms))
        chosen.append(i)
        e = resid[i] / norms[i]
        resid = resid - np.outer(resid @ e, e)
    return chosen


def _inertia(vecs: np.ndarray, mags: np.ndarray) -> tuple[int, int, int]:
    """Certified inertia (n_plus, n_minus, n_zero) of b_form on 1 or 2 vectors."""
    g = _b_rows(vecs[:, None, :], vecs[None, :, :])
    e = ROUNDOFF_FACTOR * _b_abs(mags[:, None, :], mags[None, :, :])
    if len(vecs) == 1:
        s = certified_sign(g[0, 0], e[0, 0])
        return (int(s > 0), int(s < 0), int(s == 0))
    a, b, c = g[0, 0], g[0, 1], g[1, 1]
    ea, eb, ec = e[0, 0], e[0, 1], e[1, 1]
    d = a * c - b * b
    ed = abs(c) * ea + abs(a) * ec + ea * ec + 2 * abs(b) * eb + eb * eb + ROUNDOFF_FACTOR * (abs(a * c) + b * b)
    sd = certified_sign(d, ed)
    if sd < 0:
        return (1, 1, 0)
    if sd > 0:
        return (2, 0, 0) if a + c > 0 else (0, 2, 0)
    st = certified_sign(a + c, ea + ec)
    if st > 0:
        return (1, 0, 1)
    if st < 0:
        return (0, 1, 1)
    return (0, 0, 2)


def gram_form(label: GroupLabel | str, p: np.ndarray, tol: float = sl2.DEFAULT_TOL) -> GramForm:
    """Ambient form on a Euclidean-orthonormal basis of the tangent span.

    The signature is the certified inertia of the same form on a basis of raw
    tangent vectors (Sylvester's law makes the two agree).
    """
    _, s, vh = _svd(label, p)
    r = _rank(s, tol)
    if r not in (1, 2):
        raise DimensionOutOfRange(f"orbit dimension {r}: Gram form is defined for 1 or 2")
    frame = vh[:r]
    g = frame @ sl2.AMBIENT_GRAM @ frame.T
    g = 0.5 * (g + g.T)
    vecs, mags = _raw(label, p)
    idx = _pivot(vecs, r)
    return GramForm(g, _inertia(vecs[idx], mags[idx]))


def _character_from(dim: int, signs: tuple[int, int, int]) -> CausalCharacter:
    plus, minus, zero = signs
    if dim == 1:
        if plus:
            return CausalCharacter.SPACELIKE_CURVE
        if minus:
            return CausalCharacter.TIMELIKE_CURVE
        return CausalCharacter.LIGHTLIKE_CURVE
    if plus == 2:
        return CausalCharacter.SPACELIKE_SURFACE
    if plus == 1 and minus == 1:
        return CausalCharacter.LORENTZIAN_SURFACE
    if plus == 1 and zero == 1:
        return CausalCharacter.DEGENERATE_SURFACE
    raise UnexpectedSignature(f"2-dimensional orbit with signature {signs}")


def causal_character(label: GroupLabel | str, p: np.ndarray, tol: float = sl2.DEFAULT_TOL) -> CausalCharacter:
    dim = orbit_dimension(label, p, tol)
    if dim == 0:
        return CausalCharacter.POINT0
    if dim == 3:
        return CausalCharacter.OPEN3
    return _character_from(dim, gram_form(label, p, tol).signature)


# --- direction sweep ---------------------------------------------------------

def _with_axes(dirs: np.ndarray) -> np.ndarray:
    k = dirs.shape[1]
    return np.vstack([dirs, np.eye(k)])


@functools.lru_cache(maxsize=None)
def direction_grid(k: int) -> np.ndarray:
    """Deterministic unit directions in coefficient space R^k (antipodes omitted)."""
    if k == 1:
        return np.ones((1, 1))
    if k == 2:
        th = math.pi * np.arange(720) / 720
        return _with_axes(np.column_stack([np.cos(th), np.sin(th)]))
    if k == 3:
        th = math.pi * np.arange(64) / 64
        ph = math.pi * np.arange(64) / 64
        tt, pp = np.meshgrid(th, ph, indexing="ij")
        d = np.column_stack([
            (np.sin(tt) * np.cos(pp)).ravel(),
            (np.sin(tt) * np.sin(pp)).ravel(),
            np.cos(tt).ravel(),
        ])
        return _with_axes(d)
    if k == 4:
        # Fibonacci-style lattice on S^3 via Hopf coordinates
        n = 4096
        i = np.arange(n) + 0.5
        u = i / n
        phi1 = 2 * math.pi * ((i * 0.7548776662466927) % 1.0)
        phi2 = 2 * math.pi * ((i * 0.5698402909980532) % 1.0)
        a, b = np.sqrt(u), np.sqrt(1 - u)
        d = np.column_stack([a * np.cos(phi1), a * np.sin(phi1), b * np.cos(phi2), b * np.sin(phi2)])
        return _with_axes(d)
    raise ValueError(f"no direction grid for k={k}")


def _q_certified(coefs: np.ndarray, t: np.ndarray, m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Q of the tangent vectors for rows of ``coefs``, with roundoff bounds and |v|^2."""
    vs = coefs @ t
    mv = np.abs(coefs) @ m
    q = sl2.q_form_rows(vs)
    err = ROUNDOFF_FACTOR * (mv[:, 0] * mv[:, 3] + mv[:, 1] * mv[:, 2])
    return q, err, np.sum(vs * vs, axis=1)


_REFINE_ITERS = 600


def _refine(c0: np.ndarray, t: np.ndarray, m: np.ndarray, sense: float, h0: float) -> np.ndarray:
    """Pattern search on the unit sphere for the extremum of sense * Q(v)/|v|^2."""
    k = len(c0)
    steps = np.vstack([np.eye(k), -np.eye(k)])

    def score(cs):
        q, _, n2 = _q_certified(cs, t, m)
        return sense * q / np.where(n2 > 0, n2, np.inf)

    c = c0 / np.linalg.norm(c0)
    best = score(c[None, :])[0]
    h = h0
    for _ in range(_REFINE_ITERS):
        if h <= 1e-12:
            break
        cand = c[None, :] + h * steps
        cand /= np.linalg.norm(cand, axis=1)[:, None]
        sc = score(cand)
        i = int(np.argmin(sc))
        if sc[i] < best:
            c, best = cand[i], sc[i]
        else:
            h *= 0.5
    return c


def sweep_signs(label: GroupLabel | str, p: np.ndarray, tol: float = sl2.DEFAULT_TOL) -> set[str]:
    """Signs of Q attained on tangent vectors over the direction grid.

    Missing signs are searched for by local refinement around the grid's
    extreme directions, since thin sign cones can fall between grid points.
    """
    t, m = _raw(label, p)
    grid = direction_grid(t.shape[0])
    q, err, n2 = _q_certified(grid, t, m)
    scale = max(float(np.max(np.sum(t * t, axis=1))), 1.0)
    keep = n2 > (tol * tol) * scale
    q, err, n2, grid = q[keep], err[keep], n2[keep], grid[keep]
    signs = set()
    if np.any(q > err):
        signs.add("+")
    if np.any(q < -err):
        signs.add("-")
    if np.any(np.abs(q) <= err):
        signs.add("0")
    h0 = math.pi / 360
    for sym, sense in (("-", 1.0), ("+", -1.0)):
        if sym in signs or q.size == 0:
            continue
        c = _refine(grid[int(np.argmin(sense * q / n2))], t, m, sense, h0)
        qc, ec, nc = _q_certified(c[None, :], t, m)
        if nc[0] > (tol * tol) * scale:
            s = certified_sign(qc[0], ec[0])
            signs.add({1: "+", -1: "-", 0: "0"}[s])
    return signs


def sweep_character(
    label: GroupLabel | str, p: np.ndarray, grid_size: int | None = None, tol: float = sl2.DEFAULT_TOL
) -> CausalCharacter:
    """Causal character from the signs of Q along sampled orbit directions.

    Independent of :func:`gram_form`; ``grid_size`` is accepted for interface
    compatibility, the grid is fixed per Lie algebra dimension.
    """
    dim = orbit_dimension(label, p, tol)
    if dim == 0:
        return CausalCharacter.POINT0
    if dim == 3:
        return CausalCharacter.OPEN3
    signs = sweep_signs(label, p, tol)
    if dim == 1:
        if signs == {"+"}:
            return CausalCharacter.SPACELIKE_CURVE
        if signs == {"-"}:
            return CausalCharacter.TIMELIKE_CURVE
        if signs == {"0"}:
            return CausalCharacter.LIGHTLIKE_CURVE
        raise UnexpectedSignature(f"curve with mixed signs {sorted(signs)}")
    if {"+", "-"} <= signs:
        return CausalCharacter.LORENTZIAN_SURFACE
    if signs == {"+"}:
        return CausalCharacter.SPACELIKE_SURFACE
    if signs == {"+", "0"}:
        return CausalCharacter.DEGENERATE_SURFACE
    raise UnexpectedSignature(f"surface with signs {sorted(signs)}")
