"""Closed-form stabilizer families and their fixation checks.

Each :class:`StabilizerFamily` maps a base point and one or two free
parameters to catalog group parameters.  ``printed`` is the form as it
circulates; ``exact`` is the re-derived one.  They coincide except where
``status`` is ``CORRECTED``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import sl2
from .catalog import GroupLabel, act, element
from .polynomials import PolyStatus

FIX_TOL = 1e-12
GRID = np.linspace(-3.0, 3.0, 61)
SUB_GRID = np.linspace(-3.0, 3.0, 13)


@dataclass(frozen=True)
class StabilizerFamily:
    key: str
    label: GroupLabel
    domain: str
    free: int
    sample_base: Callable[[np.random.Generator], np.ndarray]
    printed: Callable
    exact: Callable
    status: PolyStatus = PolyStatus.MATCH
    note: str = ""


def _sh(t):
    return math.exp(t) - math.exp(-t)


def _upper(rng):
    """Random upper triangular point, either sign of the diagonal."""
    a = rng.uniform(0.5, 2.0) * rng.choice((-1.0, 1.0))
    return sl2.mat(a, rng.uniform(-2.0, 2.0), 0.0, 1.0 / a)


def _upper_distinct_diag(rng):
    while True:
        p = _upper(rng)
        if abs(p[0, 0] - p[1, 1]) > 0.1:
            return p


def _zero_p22(rng):
    a = rng.uniform(-2.0, 2.0)
    c = rng.uniform(0.5, 2.0) * rng.choice((-1.0, 1.0))
    return sl2.mat(a, -1.0 / c, c, 0.0)


def _nxn(p, t):
    return (t, p[1, 1] / p[0, 0] * t)


def _gfa_printed(p, t):
    return (t, p[0, 1] * _sh(t) / p[1, 1])


def _gfa(p, t):
    return (t, -p[0, 1] * _sh(t) / p[1, 1])


def _diagaff(p, t):
    return (t, -p[0, 1] * _sh(t) / (p[1, 1] - p[0, 0]))


def _affxa_upper(p, t):
    return (t, -p[0, 1] / p[1, 1] * _sh(t), t)


def _affxa_zero_p22(p, t):
    return (t, -p[0, 0] / p[1, 0] * _sh(t), -t)


def _s2(p, t, s):
    return (p[0, 1] * _sh(t) + p[1, 1] * s) / p[0, 0]


def _affxaff(p, t, s):
    return (t, s, t, _s2(p, t, s))


def _gff(p, t, s):
    return (t, s, _s2(p, t, s))


L = GroupLabel
FAMILIES: tuple[StabilizerFamily, ...] = (
    StabilizerFamily("NxN", L.NxN, "p21 = 0", 1, _upper, _nxn, _nxn),
    StabilizerFamily("GFA", L.GFA, "p21 = 0", 1, _upper, _gfa_printed, _gfa, PolyStatus.CORRECTED,
                     "sign of s(t) reversed: s(t) = p12 (e^-t - e^t) / p22"),
    StabilizerFamily("DiagAff.a", L.DiagAff, "p21 = 0, p11 != p22", 1, _upper_distinct_diag, _diagaff, _diagaff),
    StabilizerFamily("AffxA.p21", L.AffxA, "p21 = 0", 1, _upper, _affxa_upper, _affxa_upper),
    StabilizerFamily("AffxA.p22", L.AffxA, "p21 != 0, p22 = 0", 1, _zero_p22, _affxa_zero_p22, _affxa_zero_p22),
    StabilizerFamily("AffxAff", L.AffxAff, "p21 = 0", 2, _upper, _affxaff, _affxaff),
    StabilizerFamily("GFF", L.GFF, "p21 = 0", 2, _upper, _gff, _gff,
                     note="the undefined symbol in the printed numerator is read as p12"),
)


def family(key: str) -> StabilizerFamily:
    for f in FAMILIES:
        if f.key == key:
            return f
    raise KeyError(key)


def fixation_residual(fam: StabilizerFamily, p: np.ndarray, form: str = "printed") -> float:
    """Max entry of ``g . p - p`` over the parameter grid."""
    fn = fam.printed if form == "printed" else fam.exact
    worst = 0.0
    if fam.free == 1:
        grid = [(t,) for t in GRID]
    else:
        grid = [(t, s) for t in SUB_GRID for s in SUB_GRID]
    for args in grid:
        q = act(element(fam.label, fn(p, *args)), p)
        worst = max(worst, float(np.max(np.abs(q - p))))
    return worst


def check_family(fam: StabilizerFamily, bases: int, seed: int, form: str = "printed") -> float:
    """Worst fixation residual over ``bases`` random points of the family's domain."""
    worst = 0.0
    for i in range(bases):
        p = fam.sample_base(np.random.default_rng([seed, i]))
        worst = max(worst, fixation_residual(fam, p, form))
    return worst


def stabilizer_table(bases: int = 10, seed: int = 0) -> list[dict]:
    rows = []
    for fam in FAMILIES:
        printed = check_family(fam, bases, seed, "printed")
        exact = printed if fam.status is PolyStatus.MATCH else check_family(fam, bases, seed, "exact")
        rows.append({
            "family": fam.key,
            "group": fam.label.value,
            "domain": fam.domain,
            "status": fam.status.value,
            "printed_residual": printed,
            "exact_residual": exact,
            "note": fam.note,
        })
    return rows


def printed_fixes(fam: StabilizerFamily, bases: int = 10, seed: int = 0, tol: float = FIX_TOL) -> bool:
    return check_family(fam, bases, seed, "printed") <= tol


def exact_fixes(fam: StabilizerFamily, bases: int = 10, seed: int = 0, tol: float = FIX_TOL) -> bool:
    return check_family(fam, bases, seed, "exact") <= tol

