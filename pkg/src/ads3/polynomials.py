"""Direction polynomials: Q evaluated on the orbit tangent vector along a
one-parameter direction, written in closed form per catalog label.

Each entry fixes a coefficient map from the direction parameters (alpha,
beta, ...) to coefficients on the catalog Lie basis, so that
``q_form(sum c_i (V_i p - p W_i))`` equals the closed form.  ``printed`` is
the form as it circulates in the literature; ``exact`` is the re-derived
form.  They coincide unless ``status`` says otherwise.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import sl2
from .catalog import GroupLabel, as_label, spec
from .engine import combine

Poly = Callable[[np.ndarray, Sequence[float]], float]


class PolyStatus(str, enum.Enum):
    MATCH = "match"
    # printed form is off by a documented slip; exact form is asserted instead
    CORRECTED = "corrected"
    # no printed form exists; exact form derived independently
    DERIVED = "derived"


@dataclass(frozen=True)
class DirectionPolynomial:
    label: GroupLabel
    params: tuple[str, ...]
    coefficients: Callable[..., tuple[float, ...]]
    exact: Poly
    printed: Optional[Poly]
    status: PolyStatus
    note: str = ""


def _e(p):
    return p[0, 0], p[0, 1], p[1, 0], p[1, 1]


def _axk(p, c):
    a, = c
    p11, p12, p21, p22 = _e(p)
    return -(a * a + 2 * (p11 * p21 + p12 * p22) * a - 1)


def _nxk(p, c):
    a, = c
    _, _, p21, p22 = _e(p)
    return -a * (a + p21 * p21 + p22 * p22)


def _kxk(p, c):
    a, = c
    return -(a * a + float(np.sum(p * p)) * a + 1)


def _affxi(p, c):
    a, _ = c
    return a * a


def _gfk_printed(p, c):
    a, = c
    p11, p12, p21, p22 = _e(p)
    return -a * (p21 ** 2 + p22 ** 2) + 2 * (p11 - p12) * p22


def _gfk(p, c):
    a, = c
    p11, p12, p21, p22 = _e(p)
    return -a * (p21 ** 2 + p22 ** 2) - 2 * (p11 * p21 + p12 * p22)


def _axa(p, c):
    a, = c
    p11, _, _, p22 = _e(p)
    return a * a - 2 * (2 * p11 * p22 - 1) * a + 1


def _axn(p, c):
    a, = c
    p11, _, p21, _ = _e(p)
    return 1 + 2 * a * p11 * p21


def _nxn(p, c):
    a, = c
    return a * p[1, 0] ** 2


def _diagaff(p, c):
    a, b = c
    p11, p12, p21, p22 = _e(p)
    return b * b * p21 ** 2 - 2 * a * p21 * (2 * a * p12 + b * (p22 - p11))


def _gfn(p, c):
    b, = c
    p11, _, p21, _ = _e(p)
    return 1 + 2 * p11 * p21 + b * p21 ** 2


def _gfa(p, c):
    a, b = c
    _, p12, p21, p22 = _e(p)
    return -2 * a * p21 * (2 * a * p12 + b * p22)


def _affxa(p, c):
    a, b = c
    p11, p12, p21, p22 = _e(p)
    return b * b + 2 * (p11 * p22 + p12 * p21) * b + 1 + 2 * a * b * p21 * p22


def _affxn(p, c):
    a, b = c
    p11, _, p21, _ = _e(p)
    return a * b * p21 ** 2 + 2 * b * p11 * p21 + 1


def _affxaff(p, c):
    a, b, g, h = c
    p11, _, p21, p22 = _e(p)
    return (b * h * p21 ** 2 + 2 * a * b * p21 * p22 - 2 * g * h * p11 * p21
            - 4 * a * g * p11 * p22 + (a + g) ** 2)


def _diagsl2(p, c):
    a, b, g = c
    p11, p12, p21, p22 = _e(p)
    return ((g * p12 - (b - g) * p21) ** 2
            - (2 * a * p12 + (b - g) * (p22 - p11)) * (g * (p22 - p11) + 2 * a * p21))


def _gff_printed(p, c):
    a, b, g = c
    p11, p12, p21, p22 = _e(p)
    return (-b * g * p21 ** 2 + 4 * a * a * p12 * p21 - 2 * a * g * p11 * p21
            + 2 * a * b * p21 * p22)


def _gff(p, c):
    return -_gff_printed(p, c)


_L = GroupLabel
_TABLE = {
    _L.AxK: DirectionPolynomial(_L.AxK, ("alpha",), lambda a: (1.0, a), _axk, _axk, PolyStatus.MATCH),
    _L.NxK: DirectionPolynomial(_L.NxK, ("alpha",), lambda a: (1.0, a), _nxk, None, PolyStatus.DERIVED,
                                "no closed form circulates; derived on det = 1"),
    _L.KxK: DirectionPolynomial(_L.KxK, ("alpha",), lambda a: (1.0, -a), _kxk, _kxk, PolyStatus.MATCH),
    _L.AffxI: DirectionPolynomial(_L.AffxI, ("a", "b"), lambda a, b: (a, b), _affxi, None,
                                  PolyStatus.DERIVED, "values 1 on X p and 0 on Y p"),
    _L.GFK: DirectionPolynomial(_L.GFK, ("alpha",), lambda a: (1.0, a), _gfk, _gfk_printed,
                                PolyStatus.CORRECTED,
                                "alpha-free term is -2(p11 p21 + p12 p22), not 2(p11 - p12) p22"),
    _L.AxA: DirectionPolynomial(_L.AxA, ("alpha",), lambda a: (1.0, a), _axa, _axa, PolyStatus.MATCH),
    _L.NxN: DirectionPolynomial(_L.NxN, ("alpha",), lambda a: (1.0, a), _nxn, _nxn, PolyStatus.MATCH),
    _L.AxN: DirectionPolynomial(_L.AxN, ("alpha",), lambda a: (1.0, a), _axn, _axn, PolyStatus.MATCH),
    _L.AffxA: DirectionPolynomial(_L.AffxA, ("alpha", "beta"), lambda a, b: (1.0, a, -b), _affxa, _affxa,
                                  PolyStatus.MATCH),
    _L.AffxN: DirectionPolynomial(_L.AffxN, ("alpha", "beta"), lambda a, b: (1.0, a, b), _affxn, _affxn,
                                  PolyStatus.MATCH),
    _L.AffxAff: DirectionPolynomial(_L.AffxAff, ("alpha", "beta", "gamma", "eta"),
                                    lambda a, b, g, h: (g, -b, a, -h), _affxaff, _affxaff, PolyStatus.MATCH,
                                    "matches with the roles of alpha and gamma exchanged"),
    _L.DiagAff: DirectionPolynomial(_L.DiagAff, ("alpha", "beta"), lambda a, b: (a, b), _diagaff, _diagaff,
                                    PolyStatus.MATCH),
    _L.DiagSL2: DirectionPolynomial(_L.DiagSL2, ("alpha", "beta", "gamma"), lambda a, b, g: (a, b, g),
                                    _diagsl2, _diagsl2, PolyStatus.MATCH),
    _L.GFN: DirectionPolynomial(_L.GFN, ("beta",), lambda b: (1.0, b), _gfn, _gfn, PolyStatus.MATCH),
    _L.GFF: DirectionPolynomial(_L.GFF, ("alpha", "beta", "gamma"), lambda a, b, g: (a, b, g), _gff,
                                _gff_printed, PolyStatus.CORRECTED, "overall sign reversed"),
    _L.GFA: DirectionPolynomial(_L.GFA, ("alpha", "beta"), lambda a, b: (a, b), _gfa, _gfa, PolyStatus.MATCH),
}


def direction_polynomial(label: GroupLabel | str) -> DirectionPolynomial:
    return _TABLE[as_label(label)]


def tangent_q(label: GroupLabel | str, p: np.ndarray, direction: Sequence[float]) -> float:
    """Generic side of the identity: Q of the tangent vector for a direction."""
    dp = direction_polynomial(label)
    v, w = combine(label, dp.coefficients(*direction))
    return sl2.q_form(v @ p - p @ w)


def relative_error(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def identity_errors(label: GroupLabel | str, p: np.ndarray, direction: Sequence[float]) -> dict[str, float]:
    """Relative errors of the exact (and, if any, printed) form against the generic value."""
    dp = direction_polynomial(label)
    generic = tangent_q(label, p, direction)
    out = {"exact": relative_error(generic, dp.exact(p, direction))}
    if dp.printed is not None:
        out["printed"] = relative_error(generic, dp.printed(p, direction))
    return out


def sample_directions(label: GroupLabel | str, rng: np.random.Generator, scale: float = 2.0) -> tuple[float, ...]:
    n = len(direction_polynomial(label).params)
    return tuple(rng.uniform(-scale, scale, size=n))


assert set(_TABLE) == set(GroupLabel)
assert all(len(spec(k).lie_basis) == len(v.coefficients(*([0.0] * len(v.params)))) for k, v in _TABLE.items())
