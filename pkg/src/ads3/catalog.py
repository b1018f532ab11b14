"""The sixteen connected subgroups of SL(2,R) x SL(2,R) acting with
cohomogeneity one on adS3, stored as standard conjugacy representatives.

A group element is a pair ``(g1, g2)`` acting by ``p -> g1 p g2^{-1}``; the
pair and its negative act identically, so no sign canonicalization happens.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import sl2
from .errors import ParamArity
from .sl2 import X, Y, Z, ZERO


class GroupLabel(str, enum.Enum):
    AxK = "AxK"
    NxK = "NxK"
    KxK = "KxK"
    AffxI = "AffxI"
    GFK = "GFK"
    AxA = "AxA"
    NxN = "NxN"
    AxN = "AxN"
    AffxA = "AffxA"
    AffxN = "AffxN"
    AffxAff = "AffxAff"
    DiagAff = "DiagAff"
    DiagSL2 = "DiagSL2"
    GFN = "GFN"
    GFF = "GFF"
    GFA = "GFA"


class IsoType(str, enum.Enum):
    TORUS2 = "Torus2"
    R2 = "R2"
    AFF = "Aff"
    AFF_TIMES_R = "AffTimesR"
    AFF_TIMES_AFF = "AffTimesAff"
    SL2R = "SL2R"


class IsometryPair(NamedTuple):
    g1: np.ndarray
    g2: np.ndarray


BasisPair = tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class GroupSpec:
    label: GroupLabel
    lie_basis: tuple[BasisPair, ...]
    proper: bool
    iso_type: IsoType
    param_names: tuple[str, ...]
    maker: Callable[..., IsometryPair]

    @property
    def dim(self) -> int:
        return len(self.lie_basis)

    @property
    def param_count(self) -> int:
        return len(self.param_names)

    def p1(self) -> list[np.ndarray]:
        """Projection of the Lie algebra basis onto the first factor."""
        return [v for v, _ in self.lie_basis]

    def p2(self) -> list[np.ndarray]:
        return [w for _, w in self.lie_basis]


def _pair(g1: np.ndarray, g2: np.ndarray) -> IsometryPair:
    return IsometryPair(np.asarray(g1, dtype=float), np.asarray(g2, dtype=float))


def _diag_sl2(t: float, s: float, u: float) -> IsometryPair:
    g = sl2.exp_traceless(t * X) @ sl2.exp_traceless(s * Y) @ sl2.exp_traceless(u * Z)
    return _pair(g, g.copy())


_F, _A, _N, _K = sl2.f_ts, sl2.a_t, sl2.n_t, sl2.k_t
L = GroupLabel

_SPECS = (
    GroupSpec(L.AxK, ((X, ZERO), (ZERO, Z)), True, IsoType.R2, ("t", "u"),
              lambda t, u: _pair(_A(t), _K(u))),
    GroupSpec(L.NxK, ((Y, ZERO), (ZERO, Z)), True, IsoType.R2, ("t", "u"),
              lambda t, u: _pair(_N(t), _K(u))),
    GroupSpec(L.KxK, ((Z, ZERO), (ZERO, Z)), True, IsoType.TORUS2, ("t", "u"),
              lambda t, u: _pair(_K(t), _K(u))),
    GroupSpec(L.AffxI, ((X, ZERO), (Y, ZERO)), True, IsoType.AFF, ("t", "s"),
              lambda t, s: _pair(_F(t, s), sl2.I2)),
    GroupSpec(L.GFK, ((X, Z), (Y, ZERO)), True, IsoType.AFF, ("t", "s"),
              lambda t, s: _pair(_F(t, s), _K(t))),
    GroupSpec(L.AxA, ((X, ZERO), (ZERO, X)), False, IsoType.R2, ("t", "u"),
              lambda t, u: _pair(_A(t), _A(u))),
    GroupSpec(L.NxN, ((Y, ZERO), (ZERO, Y)), False, IsoType.R2, ("t", "u"),
              lambda t, u: _pair(_N(t), _N(u))),
    GroupSpec(L.AxN, ((X, ZERO), (ZERO, Y)), False, IsoType.R2, ("t", "u"),
              lambda t, u: _pair(_A(t), _N(u))),
    GroupSpec(L.AffxA, ((X, ZERO), (Y, ZERO), (ZERO, X)), False, IsoType.AFF_TIMES_R,
              ("t", "s", "u"), lambda t, s, u: _pair(_F(t, s), _A(u))),
    GroupSpec(L.AffxN, ((X, ZERO), (Y, ZERO), (ZERO, Y)), False, IsoType.AFF_TIMES_R,
              ("t", "s", "u"), lambda t, s, u: _pair(_F(t, s), _N(u))),
    GroupSpec(L.AffxAff, ((X, ZERO), (Y, ZERO), (ZERO, X), (ZERO, Y)), False,
              IsoType.AFF_TIMES_AFF, ("t", "s", "t2", "s2"),
              lambda t, s, t2, s2: _pair(_F(t, s), _F(t2, s2))),
    GroupSpec(L.DiagAff, ((X, X), (Y, Y)), False, IsoType.AFF, ("t", "s"),
              lambda t, s: _pair(_F(t, s), _F(t, s))),
    GroupSpec(L.DiagSL2, ((X, X), (Y, Y), (Z, Z)), False, IsoType.SL2R, ("t", "s", "u"),
              _diag_sl2),
    GroupSpec(L.GFN, ((X, Y), (Y, ZERO)), False, IsoType.AFF, ("t", "s"),
              lambda t, s: _pair(_F(t, s), _N(t))),
    GroupSpec(L.GFF, ((X, X), (Y, ZERO), (ZERO, Y)), False, IsoType.AFF_TIMES_R,
              ("t", "s", "s2"), lambda t, s, s2: _pair(_F(t, s), _F(t, s2))),
    GroupSpec(L.GFA, ((X, X), (Y, ZERO)), False, IsoType.AFF, ("t", "s"),
              lambda t, s: _pair(_F(t, s), _A(t))),
)

_BY_LABEL = {s.label: s for s in _SPECS}
LABELS: tuple[GroupLabel, ...] = tuple(s.label for s in _SPECS)
PROPER_LABELS = tuple(s.label for s in _SPECS if s.proper)
NONPROPER_LABELS = tuple(s.label for s in _SPECS if not s.proper)


def catalog() -> list[GroupSpec]:
    return list(_SPECS)


def as_label(label: GroupLabel | str) -> GroupLabel:
    return label if isinstance(label, GroupLabel) else GroupLabel(label)


def spec(label: GroupLabel | str) -> GroupSpec:
    return _BY_LABEL[as_label(label)]


def element(label: GroupLabel | str, params: Sequence[float]) -> IsometryPair:
    """Group element with the given parameters (see ``spec(label).param_names``)."""
    sp = spec(label)
    params = tuple(float(x) for x in params)
    if len(params) != sp.param_count:
        raise ParamArity(f"{sp.label.value} takes {sp.param_count} parameters, got {len(params)}")
    return sp.maker(*params)


def identity_params(label: GroupLabel | str) -> tuple[float, ...]:
    return (0.0,) * spec(label).param_count


def act(g: IsometryPair, p: np.ndarray) -> np.ndarray:
    """``g1 p g2^{-1}``; g2 has det 1 so its adjugate is its inverse."""
    return g.g1 @ p @ sl2.adj(g.g2)


def flat_pair(v: np.ndarray, w: np.ndarray) -> np.ndarray:
    return np.concatenate([np.ravel(v), np.ravel(w)])


def bracket_closure_residual(label: GroupLabel | str) -> float:
    """Largest least-squares residual of a pairwise bracket against the basis span."""
    basis = spec(label).lie_basis
    span = np.stack([flat_pair(v, w) for v, w in basis], axis=1)
    worst = 0.0
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            (v1, w1), (v2, w2) = basis[i], basis[j]
            target = flat_pair(sl2.bracket(v1, v2), sl2.bracket(w1, w2))
            coef, *_ = np.linalg.lstsq(span, target, rcond=None)
            worst = max(worst, float(np.linalg.norm(span @ coef - target)))
    return worst


def bracket_closure_check(label: GroupLabel | str) -> bool:
    return bracket_closure_residual(label) < 1e-12


FLOW_STEP = 1e-5
FLOW_TOL = 1e-7


def flow_residual(label: GroupLabel | str, p: np.ndarray, h: float = FLOW_STEP) -> float:
    """Central difference of ``element(h e_i) . p`` against ``V_i p - p W_i``, worst over i."""
    sp = spec(label)
    worst = 0.0
    for i, (v, w) in enumerate(sp.lie_basis):
        e = np.zeros(sp.param_count)
        e[i] = h
        fd = (act(element(label, e), p) - act(element(label, -e), p)) / (2.0 * h)
        worst = max(worst, float(np.max(np.abs(fd - (v @ p - p @ w)))))
    return worst


def _ln(x: float) -> float:
    if not x > 0:
        raise ValueError("not in the identity component")
    return float(np.log(x))


def _f(g):
    return (_ln(g[0, 0]), float(g[0, 1]))


def _iwasawa_params(g):
    u = float(np.arctan2(g[1, 0], g[1, 1]))
    r = g @ sl2.k_t(-u)
    return (_ln(r[0, 0]), float(r[0, 1] / r[0, 0]), u)


def _kang(g):
    return float(np.arctan2(g[1, 0], g[0, 0]))


_EXTRACT: dict[GroupLabel, Callable[[np.ndarray, np.ndarray], tuple]] = {
    L.AxK: lambda g, h: (_ln(g[0, 0]), _kang(h)),
    L.NxK: lambda g, h: (float(g[0, 1]), _kang(h)),
    L.KxK: lambda g, h: (_kang(g), _kang(h)),
    L.AffxI: lambda g, h: _f(g),
    L.GFK: lambda g, h: _f(g),
    L.AxA: lambda g, h: (_ln(g[0, 0]), _ln(h[0, 0])),
    L.NxN: lambda g, h: (float(g[0, 1]), float(h[0, 1])),
    L.AxN: lambda g, h: (_ln(g[0, 0]), float(h[0, 1])),
    L.AffxA: lambda g, h: _f(g) + (_ln(h[0, 0]),),
    L.AffxN: lambda g, h: _f(g) + (float(h[0, 1]),),
    L.AffxAff: lambda g, h: _f(g) + _f(h),
    L.DiagAff: lambda g, h: _f(g),
    L.DiagSL2: lambda g, h: _iwasawa_params(g),
    L.GFN: lambda g, h: _f(g),
    L.GFF: lambda g, h: _f(g) + (float(h[0, 1]),),
    L.GFA: lambda g, h: _f(g),
}


def params_of(label: GroupLabel | str, g: IsometryPair, rtol: float = 1e-9) -> tuple[float, ...] | None:
    """Parameters of ``g`` if it is an element of the group, else None.

    Membership is decided by rebuilding the element from the extracted
    parameters and comparing entrywise, relative to the pair's size.
    """
    label = as_label(label)
    g1, g2 = np.asarray(g[0], dtype=float), np.asarray(g[1], dtype=float)
    try:
        params = _EXTRACT[label](g1, g2)
    except ValueError:
        return None
    if not all(np.isfinite(params)):
        return None
    h = element(label, params)
    scale = max(1.0, float(np.max(np.abs(g1))), float(np.max(np.abs(g2))))
    err = max(float(np.max(np.abs(h.g1 - g1))), float(np.max(np.abs(h.g2 - g2))))
    return params if err <= rtol * scale else None


def is_element(label: GroupLabel | str, g: IsometryPair, rtol: float = 1e-9) -> bool:
    return params_of(label, g, rtol) is not None
