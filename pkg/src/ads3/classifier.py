"""Closed-form orbit classification per catalog label.

For every label the orbit through p is described by explicit rules on the
matrix entries: orbit class, causal character, a complete orbit invariant
(:class:`OrbitId`) and a transporter solving ``g . p = q`` in closed form.
The generic engine in :mod:`ads3.engine` is the independent cross-check.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import sl2
from .catalog import GroupLabel, act, as_label, element, spec
from .engine import CausalCharacter as CC
from .errors import NotSameOrbit, SolveFailed

# relative tolerance for comparing continuous orbit invariants
ID_RTOL = 1e-7
TRANSPORT_TOL = 1e-8


class OrbitClass(str, enum.Enum):
    PRINCIPAL = "Principal"
    SINGULAR = "Singular"
    EXCEPTIONAL = "Exceptional"
    OPEN_ORBIT = "OpenOrbit"
    FIXED_POINT = "FixedPoint"


@dataclass(frozen=True)
class OrbitId:
    """Complete orbit invariant: exact discrete part plus continuous values.

    ``branch`` separates families that share a class tag (e.g. the three
    conjugacy types of the diagonal SL(2,R) action).
    """

    label: GroupLabel
    class_tag: OrbitClass
    signs: tuple[str, ...] = ()
    continuous: tuple[float, ...] = ()
    branch: str = ""

    def key(self) -> tuple:
        return (self.label.value, self.class_tag.value, self.branch, self.signs)

    def matches(self, other: "OrbitId", rtol: float = ID_RTOL) -> bool:
        if self.key() != other.key() or len(self.continuous) != len(other.continuous):
            return False
        return all(_close(a, b, rtol) for a, b in zip(self.continuous, other.continuous))

    def to_dict(self) -> dict:
        return {
            "label": self.label.value,
            "class": self.class_tag.value,
            "branch": self.branch,
            "signs": list(self.signs),
            "continuous": [float(x) for x in self.continuous],
        }

    def __str__(self) -> str:
        parts = [self.label.value, self.class_tag.value]
        if self.branch:
            parts.append(self.branch)
        if self.signs:
            parts.append("".join(self.signs))
        if self.continuous:
            parts.append(",".join(f"{x:.10g}" for x in self.continuous))
        return "|".join(parts)


def _close(a: float, b: float, rtol: float) -> bool:
    return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))


@dataclass(frozen=True)
class StabilizerDesc:
    tag: str
    dim: int
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class OrbitRecord:
    label: GroupLabel
    dimension: int
    character: CC
    orbit_class: OrbitClass
    orbit_id: OrbitId
    stabilizer: StabilizerDesc
    diffeo_type: str

    def to_dict(self) -> dict:
        return {
            "label": self.label.value,
            "dimension": self.dimension,
            "character": self.character.value,
            "orbit_class": self.orbit_class.value,
            "orbit_id": self.orbit_id.to_dict(),
            "stabilizer": {"tag": self.stabilizer.tag, "dim": self.stabilizer.dim,
                           "params": {k: float(v) for k, v in self.stabilizer.params.items()}},
            "diffeo_type": self.diffeo_type,
        }


@dataclass(frozen=True)
class _Info:
    cls: OrbitClass
    char: CC
    signs: tuple[str, ...] = ()
    cont: tuple[float, ...] = ()
    branch: str = ""
    stab: str = "trivial"
    stab_params: dict = field(default_factory=dict)
    diffeo: str = "R2"


P, S, E, O, F = (OrbitClass.PRINCIPAL, OrbitClass.SINGULAR, OrbitClass.EXCEPTIONAL,
                 OrbitClass.OPEN_ORBIT, OrbitClass.FIXED_POINT)


def _e(p):
    return float(p[0, 0]), float(p[0, 1]), float(p[1, 0]), float(p[1, 1])


def _sg(x, tol):
    return sl2.sign(x, tol)


def _zero(x, tol):
    return abs(x) <= tol


def _unit(x: float, y: float) -> tuple[float, float]:
    r = math.hypot(x, y)
    return (x / r, y / r)


# --- per-label rules --------------------------------------------------------

def _axk(p, tol):
    p11, p12, p21, p22 = _e(p)
    return _Info(P, CC.LORENTZIAN_SURFACE, cont=(p11 * p21 + p12 * p22,), diffeo="RxS1")


def _nxk(p, tol):
    _, _, p21, p22 = _e(p)
    return _Info(P, CC.LORENTZIAN_SURFACE, cont=(math.log(math.hypot(p21, p22)),), diffeo="RxS1")


def kxk_sum(p) -> float:
    return float(np.sum(np.asarray(p) ** 2))


def _kxk(p, tol):
    s = kxk_sum(p)
    # sum - 2 = (sigma1 - sigma2)^2, so compare its square root against tol
    if math.sqrt(max(s - 2.0, 0.0)) <= tol:
        return _Info(S, CC.TIMELIKE_CURVE, cont=(2.0,), stab="diagonal-K", diffeo="S1")
    return _Info(P, CC.LORENTZIAN_SURFACE, cont=(s,), diffeo="T2")


def _affxi(p, tol):
    _, _, p21, p22 = _e(p)
    return _Info(P, CC.DEGENERATE_SURFACE, cont=_unit(p21, p22))


def gfk_phase(p) -> float:
    """Row-2 angle plus log-radius, the circle-valued invariant (mod 2 pi)."""
    _, _, p21, p22 = _e(p)
    return math.atan2(p22, p21) + math.log(math.hypot(p21, p22))


def _gfk(p, tol):
    ph = gfk_phase(p)
    return _Info(P, CC.LORENTZIAN_SURFACE, cont=(math.cos(ph), math.sin(ph)))


def _axa(p, tol):
    p11, p12, p21, p22 = _e(p)
    if _zero(p12, tol) and _zero(p21, tol):
        which = "I" if p11 > 0 else "-I"
        return _Info(S, CC.SPACELIKE_CURVE, signs=(_sg(p11, tol),), branch=which,
                     stab="diagonal-A", diffeo="R")
    if _zero(p11, tol) and _zero(p22, tol):
        which = "J" if p12 > 0 else "-J"
        return _Info(S, CC.SPACELIKE_CURVE, signs=(_sg(p12, tol),), branch=which,
                     stab="antidiagonal-A", diffeo="R")
    k = p11 * p22
    if _zero(k, tol) or _zero(k - 1.0, tol):
        ch = CC.DEGENERATE_SURFACE
    elif 0.0 < k < 1.0:
        ch = CC.SPACELIKE_SURFACE
    else:
        ch = CC.LORENTZIAN_SURFACE
    return _Info(P, ch, signs=tuple(_sg(x, tol) for x in (p11, p12, p21, p22)), cont=(k,))


def _nxn(p, tol):
    p11, _, p21, p22 = _e(p)
    if _zero(p21, tol):
        return _Info(S, CC.LIGHTLIKE_CURVE, cont=(p11,), stab="graph-N",
                     stab_params={"ratio": p22 / p11}, diffeo="R")
    return _Info(P, CC.LORENTZIAN_SURFACE, cont=(p21,))


def _axn(p, tol):
    p11, _, p21, _ = _e(p)
    s11, s21 = _sg(p11, tol), _sg(p21, tol)
    ch = CC.DEGENERATE_SURFACE if "0" in (s11, s21) else CC.LORENTZIAN_SURFACE
    return _Info(P, ch, signs=(s11, s21), cont=(p11 * p21 if ch is CC.LORENTZIAN_SURFACE else 0.0,))


def _diagaff(p, tol):
    p11, p12, p21, p22 = _e(p)
    if sl2.is_identity_like(p, tol):
        return _Info(F, CC.POINT0, signs=(_sg(p11, tol),), branch="central", stab="whole", diffeo="point")
    if _zero(p21, tol):
        if _zero(abs(p11) - 1.0, tol):
            return _Info(S, CC.LIGHTLIKE_CURVE, signs=(_sg(p11, tol), _sg(p12, tol)), branch="unipotent",
                         stab="diagonal-N", diffeo="R")
        return _Info(S, CC.LIGHTLIKE_CURVE, cont=(p11,), branch="diagonalizable",
                     stab="conjugate-diagonal-A", stab_params={"p11": p11}, diffeo="R")
    tr = p11 + p22
    gap = abs(tr) - 2.0
    if _zero(gap, tol):
        ch = CC.DEGENERATE_SURFACE
    elif gap < 0:
        ch = CC.SPACELIKE_SURFACE
    else:
        ch = CC.LORENTZIAN_SURFACE
    return _Info(P, ch, signs=(_sg(p21, tol),), cont=(tr,))


def gfn_log_invariant(p) -> float:
    """``ln|p21| - p22/p21``; the logarithm of |p21| exp(-p22/p21), overflow-free."""
    _, _, p21, p22 = _e(p)
    return math.log(abs(p21)) - p22 / p21


def gfn_invariant(p) -> float:
    """``p21 exp(-p22/p21)``, the display form of the principal invariant (may under/overflow)."""
    _, _, p21, p22 = _e(p)
    with np.errstate(over="ignore", under="ignore"):
        return float(p21 * np.exp(-p22 / p21))


def _gfn(p, tol):
    p11, _, p21, _ = _e(p)
    if _zero(p21, tol):
        return _Info(P, CC.DEGENERATE_SURFACE, signs=("0", _sg(p11, tol)), branch="p21=0")
    return _Info(P, CC.LORENTZIAN_SURFACE, signs=(_sg(p21, tol),), cont=(gfn_log_invariant(p),))


def _gfa(p, tol):
    p11, _, p21, p22 = _e(p)
    if _zero(p21, tol):
        return _Info(S, CC.LIGHTLIKE_CURVE, cont=(p22,), stab="conjugate-diagonal-A", diffeo="R")
    ch = CC.DEGENERATE_SURFACE if _zero(p22, tol) else CC.LORENTZIAN_SURFACE
    return _Info(P, ch, signs=(_sg(p21, tol),), cont=(p22,))


def _affxa(p, tol):
    _, _, p21, p22 = _e(p)
    sg = (_sg(p21, tol), _sg(p22, tol))
    if "0" in sg:
        return _Info(E, CC.DEGENERATE_SURFACE, signs=sg, stab="graph-A", diffeo="R2")
    return _Info(O, CC.OPEN3, signs=sg, diffeo="R3")


def _affxn(p, tol):
    p11, _, p21, p22 = _e(p)
    if _zero(p21, tol):
        return _Info(E, CC.DEGENERATE_SURFACE, signs=("0", _sg(p11, tol)), stab="graph-N",
                     stab_params={"ratio": p22 / p11}, diffeo="R2")
    return _Info(O, CC.OPEN3, signs=(_sg(p21, tol),), diffeo="R3")


def _affxaff(p, tol):
    p11, _, p21, _ = _e(p)
    if _zero(p21, tol):
        return _Info(E, CC.DEGENERATE_SURFACE, signs=("0", _sg(p11, tol)), stab="graph-Aff", diffeo="R2")
    return _Info(O, CC.OPEN3, signs=(_sg(p21, tol),), stab="antidiagonal-A", diffeo="R3")


def parabolic_sign(p, tol: float = sl2.DEFAULT_TOL) -> str:
    """Sign of the nilpotent part's E12 coefficient, falling back to minus its E21 entry."""
    tr = p[0, 0] + p[1, 1]
    n = p - 0.5 * tr * sl2.I2
    if abs(n[0, 1]) > tol:
        return "+" if n[0, 1] > 0 else "-"
    return "+" if n[1, 0] < 0 else "-"


def _diagsl2(p, tol):
    from .engine import causal_character  # parabolic character follows the Gram engine

    p11, p12, p21, p22 = _e(p)
    tr = p11 + p22
    kind = sl2.element_class(p, tol)
    if kind is sl2.ElementClass.CENTRAL:
        return _Info(F, CC.POINT0, signs=(_sg(p11, tol),), branch="central", stab="whole", diffeo="point")
    if kind is sl2.ElementClass.HYPERBOLIC:
        return _Info(P, CC.LORENTZIAN_SURFACE, cont=(tr,), branch="hyperbolic", stab="centralizer-A",
                     diffeo="RxS1")
    if kind is sl2.ElementClass.ELLIPTIC:
        return _Info(P, CC.SPACELIKE_SURFACE, signs=(_sg(p12 - p21, tol),), cont=(tr,), branch="elliptic",
                     stab="centralizer-K", diffeo="R2")
    ch = causal_character(GroupLabel.DiagSL2, p, tol)
    return _Info(P, ch, signs=("+" if tr > 0 else "-", parabolic_sign(p, tol)), branch="parabolic",
                 stab="centralizer-N", diffeo="RxS1")


def _gff(p, tol):
    p11, _, p21, _ = _e(p)
    if _zero(p21, tol):
        return _Info(S, CC.LIGHTLIKE_CURVE, cont=(p11,), stab="graph-Aff", diffeo="R")
    return _Info(O, CC.OPEN3, signs=(_sg(p21, tol),), diffeo="R3")


L = GroupLabel
_RULES: dict[GroupLabel, Callable[[np.ndarray, float], _Info]] = {
    L.AxK: _axk, L.NxK: _nxk, L.KxK: _kxk, L.AffxI: _affxi, L.GFK: _gfk,
    L.AxA: _axa, L.NxN: _nxn, L.AxN: _axn, L.DiagAff: _diagaff, L.GFN: _gfn,
    L.GFA: _gfa, L.AffxA: _affxa, L.AffxN: _affxn, L.AffxAff: _affxaff,
    L.DiagSL2: _diagsl2, L.GFF: _gff,
}


def _info(label, p, tol):
    return _RULES[as_label(label)](np.asarray(p, dtype=float), tol)


def classify(label: GroupLabel | str, p: np.ndarray, tol: float = sl2.DEFAULT_TOL) -> OrbitRecord:
    label = as_label(label)
    info = _info(label, p, tol)
    dim = info.char.dimension
    return OrbitRecord(
        label=label,
        dimension=dim,
        character=info.char,
        orbit_class=info.cls,
        orbit_id=OrbitId(label, info.cls, info.signs, info.cont, info.branch),
        stabilizer=StabilizerDesc(info.stab, spec(label).dim - dim, dict(info.stab_params)),
        diffeo_type=info.diffeo,
    )


def orbit_id(label: GroupLabel | str, p: np.ndarray, tol: float = sl2.DEFAULT_TOL) -> OrbitId:
    label = as_label(label)
    info = _info(label, p, tol)
    return OrbitId(label, info.cls, info.signs, info.cont, info.branch)


# --- same-orbit predicates --------------------------------------------------

def _same_cont(a, b, rtol=ID_RTOL):
    return all(_close(x, y, rtol) for x, y in zip(a, b))


def same_orbit(label: GroupLabel | str, p: np.ndarray, q: np.ndarray, tol: float = sl2.DEFAULT_TOL) -> bool:
    """Membership test written directly from the per-label conditions."""
    label = as_label(label)
    p11, p12, p21, p22 = _e(p)
    q11, q12, q21, q22 = _e(q)
    z = lambda x: _zero(x, tol)  # noqa: E731
    sg = lambda x: _sg(x, tol)  # noqa: E731
    if label is L.AxK:
        return _same_cont([p11 * p21 + p12 * p22], [q11 * q21 + q12 * q22])
    if label is L.NxK:
        return _close(math.hypot(p21, p22), math.hypot(q21, q22), ID_RTOL)
    if label is L.KxK:
        a, b = _kxk(p, tol), _kxk(q, tol)
        return a.cls == b.cls and _same_cont(a.cont, b.cont)
    if label is L.AffxI:
        return _same_cont(_unit(p21, p22), _unit(q21, q22))
    if label is L.GFK:
        d = (gfk_phase(p) - gfk_phase(q)) / (2 * math.pi)
        return abs(d - round(d)) <= ID_RTOL
    if label is L.NxN:
        if z(p21) or z(q21):
            return z(p21) and z(q21) and _close(p11, q11, ID_RTOL)
        return _close(p21, q21, ID_RTOL)
    if label is L.AxN:
        return (sg(p11), sg(p21)) == (sg(q11), sg(q21)) and _close(p11 * p21, q11 * q21, ID_RTOL)
    if label is L.GFN:
        if z(p21) or z(q21):
            return z(p21) and z(q21) and p11 * q11 > 0
        return p21 * q21 > 0 and _close(gfn_log_invariant(p), gfn_log_invariant(q), ID_RTOL)
    if label is L.GFA:
        if z(p21) or z(q21):
            return z(p21) and z(q21) and _close(p22, q22, ID_RTOL)
        return p21 * q21 > 0 and _close(p22, q22, ID_RTOL)
    if label is L.AffxA:
        return (sg(p21), sg(p22)) == (sg(q21), sg(q22))
    if label in (L.AffxN, L.AffxAff):
        if z(p21) or z(q21):
            return z(p21) and z(q21) and p11 * q11 > 0
        return p21 * q21 > 0
    if label is L.GFF:
        if z(p21) or z(q21):
            return z(p21) and z(q21) and _close(p11, q11, ID_RTOL)
        return p21 * q21 > 0
    # AxA, DiagAff, DiagSL2: the invariant is exactly the id
    return orbit_id(label, p, tol).matches(orbit_id(label, q, tol))


# --- transporters -----------------------------------------------------------

def _row_s(r1_target, r1_src, r2):
    """Least-squares s with ``r1_src + s r2 = r1_target``."""
    return float(np.dot(r1_target - r1_src, r2) / np.dot(r2, r2))


def _angle_between(u, v):
    """Angle a with u rotated by a (as a complex number) equal to v's direction."""
    return math.atan2(u[0] * v[1] - u[1] * v[0], u[0] * v[0] + u[1] * v[1])


def _tr_axk(p, q, tol):
    t = math.log(np.linalg.norm(q[0]) / np.linalg.norm(p[0]))
    m = sl2.adj(p) @ sl2.a_t(-t) @ q  # = K_{-u}
    u = math.atan2(m[0, 1], m[0, 0])
    return (t, u)


def _tr_nxk(p, q, tol):
    # row2 . K_{-u} = row2 rotated by +u
    u = _angle_between(p[1], q[1])
    pk = p @ sl2.k_t(-u)
    t = _row_s(q[0], pk[0], pk[1])
    return (t, u)


def _so2_svd(m):
    u, s, vt = np.linalg.svd(m)
    if np.linalg.det(u) < 0:
        u = u @ np.diag([1.0, -1.0])
        vt = np.diag([1.0, -1.0]) @ vt
    return u, s, vt


def _tr_kxk(p, q, tol):
    if _kxk(p, tol).cls is S:
        m = q @ sl2.adj(p)
        return (math.atan2(m[1, 0], m[0, 0]), 0.0)
    up, _, vpt = _so2_svd(p)
    uq, _, vqt = _so2_svd(q)
    kt = uq @ up.T
    kmu = vpt.T @ vqt  # = K_{-u}
    return (math.atan2(kt[1, 0], kt[0, 0]), math.atan2(kmu[0, 1], kmu[0, 0]))


def _tr_affxi(p, q, tol):
    t = math.log(np.linalg.norm(p[1]) / np.linalg.norm(q[1]))
    s = _row_s(q[0], math.exp(t) * p[0], p[1])
    return (t, s)


def _tr_gfk(p, q, tol):
    t = math.log(np.linalg.norm(p[1]) / np.linalg.norm(q[1]))
    qk = q @ sl2.k_t(t)
    s = _row_s(qk[0], math.exp(t) * p[0], p[1])
    return (t, s)


def _tr_axa(p, q, tol):
    p11, p12, p21, p22 = _e(p)
    q11, q12, q21, q22 = _e(q)
    # a = t - u scales the diagonal, b = t + u the off-diagonal
    if not _zero(p11, tol):
        a = math.log(q11 / p11)
    elif not _zero(p22, tol):
        a = -math.log(q22 / p22)
    else:
        a = 0.0
    if not _zero(p12, tol):
        b = math.log(q12 / p12)
    elif not _zero(p21, tol):
        b = -math.log(q21 / p21)
    else:
        b = 0.0
    return ((a + b) / 2, (b - a) / 2)


def _tr_nxn(p, q, tol):
    p11, p12, p21, p22 = _e(p)
    q11, q12, q21, q22 = _e(q)
    if _zero(p21, tol):
        return (0.0, (p12 - q12) / p11)
    return ((q11 - p11) / p21, (p22 - q22) / p21)


def _tr_axn(p, q, tol):
    p11, p12, p21, p22 = _e(p)
    q11, q12, q21, q22 = _e(q)
    if not _zero(p11, tol):
        t = math.log(q11 / p11)
        return (t, (p12 - math.exp(-t) * q12) / p11)
    t = math.log(p21 / q21)
    return (t, (p22 - math.exp(t) * q22) / p21)


def _tr_diagaff(p, q, tol):
    p11, p12, p21, p22 = _e(p)
    q11, q12, q21, q22 = _e(q)
    if sl2.is_identity_like(p, tol):
        return (0.0, 0.0)
    if _zero(p21, tol):
        if _zero(abs(p11) - 1.0, tol):
            # conjugation by A_t scales p12 by e^{2t}
            return (0.5 * math.log(q12 / p12), 0.0)
        # F p F^{-1} has 12 entry e^{2t} p12 + s e^t (p22 - p11); take t = 0
        return (0.0, (q12 - p12) / (p22 - p11))
    t = -0.5 * math.log(q21 / p21)
    return (t, (q11 - p11) * math.exp(t) / p21)


def _tr_gfn(p, q, tol):
    p11, p12, p21, p22 = _e(p)
    q11, q12, q21, q22 = _e(q)
    if _zero(p21, tol):
        t = math.log(q11 / p11)
        et = math.exp(t)
        return (t, p11 * (q12 - et * p12 + t * et * p11))
    t = math.log(p21 / q21)
    return (t, (q11 - math.exp(t) * p11) / p21)


def _tr_gfa(p, q, tol):
    p11, p12, p21, p22 = _e(p)
    q11, q12, q21, q22 = _e(q)
    if _zero(p21, tol):
        return (0.0, p11 * (q12 - p12))
    t = -0.5 * math.log(q21 / p21)
    return (t, (q11 - p11) * math.exp(t) / p21)


def _tr_affxa(p, q, tol):
    _, _, p21, p22 = _e(p)
    _, _, q21, q22 = _e(q)
    l21 = math.log(q21 / p21) if not _zero(p21, tol) else None
    l22 = math.log(q22 / p22) if not _zero(p22, tol) else None
    if l21 is not None and l22 is not None:
        t, u = -(l21 + l22) / 2, (l22 - l21) / 2
    elif l21 is not None:
        t, u = -l21, 0.0
    else:
        t, u = -l22, 0.0
    qa = q @ sl2.a_t(u)
    s = _row_s(qa[0], math.exp(t) * p[0], p[1])
    return (t, s, u)


def affxn_printed(p, q) -> tuple[float, float, float]:
    """Closed-form (t, s, u) with F_{t,s} p N_u^{-1} = q when p21 q21 > 0."""
    p11, _, p21, p22 = _e(p)
    q11, _, q21, q22 = _e(q)
    t = math.log(p21 / q21)
    s = (q11 * q21 - p11 * p21) / (p21 * q21)
    u = (p22 * q21 - q22 * p21) / (p21 * q21)
    return (t, s, u)


def affxn_printed_exceptional(p, q) -> tuple[float, float, float]:
    """Closed-form (t, s, 0) with F_{t,s} p = q when p21 = q21 = 0 and p11 q11 > 0."""
    p11, p12, _, _ = _e(p)
    q11, q12, _, _ = _e(q)
    return (math.log(q11 / p11), p11 * q12 - q11 * p12, 0.0)


def _tr_affxn(p, q, tol):
    if _zero(p[1, 0], tol):
        return affxn_printed_exceptional(p, q)
    return affxn_printed(p, q)


def affxaff_printed(p, q) -> tuple[float, float, float, float]:
    """Closed-form (t, s, t', s') with t' = 0 when p21 q21 > 0."""
    x, _, z, w = _e(p)
    x2, _, z2, w2 = _e(q)
    return (math.log(z / z2), (x2 * z2 - x * z) / (z * z2), 0.0, (w * z2 - w2 * z) / (z * z2))


def _tr_affxaff(p, q, tol):
    if _zero(p[1, 0], tol):
        t, s, _ = affxn_printed_exceptional(p, q)
        return (t, s, 0.0, 0.0)
    return affxaff_printed(p, q)


def _tr_gff(p, q, tol):
    p11, p12, p21, p22 = _e(p)
    q11, q12, q21, q22 = _e(q)
    if _zero(p21, tol):
        return (0.0, p11 * (q12 - p12), 0.0)
    t = -0.5 * math.log(q21 / p21)
    et = math.exp(t)
    return (t, et * (q11 - p11) / p21, (p22 - q22) * et / p21)


def _tr_diagsl2(p, q, tol):
    if sl2.is_identity_like(p, tol):
        return (0.0, 0.0, 0.0)
    # g p = q g is linear in the entries of g
    m = np.zeros((4, 4))
    for k in range(4):
        g = np.zeros(4)
        g[k] = 1.0
        g = g.reshape(2, 2)
        m[:, k] = (g @ p - q @ g).ravel()
    _, _, vh = np.linalg.svd(m)
    ker = vh[2:]
    # det restricted to the kernel is a quadratic form; take its top direction
    a, b = ker[0].reshape(2, 2), ker[1].reshape(2, 2)
    da, db = sl2.det(a), sl2.det(b)
    dab = 0.5 * (sl2.det(a + b) - da - db)
    w, v = np.linalg.eigh(np.array([[da, dab], [dab, db]]))
    g = v[0, 1] * a + v[1, 1] * b
    dg = sl2.det(g)
    if dg <= 0:
        raise SolveFailed("no positive-determinant conjugator found")
    g = g / math.sqrt(dg)
    # g = A_t N_s K_u: row 2 of g is (0, e^{-t}) K_u
    u = math.atan2(g[1, 0], g[1, 1])
    r = g @ sl2.k_t(-u)
    return (math.log(r[0, 0]), r[0, 1] / r[0, 0], u)


_TRANSPORT = {
    L.AxK: _tr_axk, L.NxK: _tr_nxk, L.KxK: _tr_kxk, L.AffxI: _tr_affxi, L.GFK: _tr_gfk,
    L.AxA: _tr_axa, L.NxN: _tr_nxn, L.AxN: _tr_axn, L.DiagAff: _tr_diagaff, L.GFN: _tr_gfn,
    L.GFA: _tr_gfa, L.AffxA: _tr_affxa, L.AffxN: _tr_affxn, L.AffxAff: _tr_affxaff,
    L.DiagSL2: _tr_diagsl2, L.GFF: _tr_gff,
}


def transport_residual(label: GroupLabel | str, params, p: np.ndarray, q: np.ndarray) -> float:
    return float(np.max(np.abs(act(element(label, params), p) - q)))


def solve_transporter(label: GroupLabel | str, p: np.ndarray, q: np.ndarray, x0=None,
                      max_iter: int = 200, tol: float = 1e-12) -> tuple[float, ...]:
    """Damped Gauss-Newton (Levenberg-Marquardt) solve of ``g(x) . p = q``."""
    label = as_label(label)
    n = spec(label).param_count
    x = np.zeros(n) if x0 is None else np.asarray(x0, dtype=float).copy()

    def resid(x):
        return (act(element(label, x), p) - q).ravel()

    r = resid(x)
    lam = 1e-3
    h = 1e-7
    for _ in range(max_iter):
        cost = float(r @ r)
        if math.sqrt(cost) <= tol:
            return tuple(float(v) for v in x)
        jac = np.empty((4, n))
        for i in range(n):
            d = np.zeros(n)
            d[i] = h
            jac[:, i] = (resid(x + d) - resid(x - d)) / (2 * h)
        a = jac.T @ jac
        g = jac.T @ r
        while True:
            step = np.linalg.solve(a + lam * np.diag(np.diag(a) + 1e-12), -g)
            xn = x + step
            rn = resid(xn)
            if float(rn @ rn) < cost:
                x, r = xn, rn
                lam = max(lam / 3, 1e-12)
                break
            lam *= 4
            if lam > 1e12:
                break
        if lam > 1e12:
            break
    if float(np.max(np.abs(r))) <= TRANSPORT_TOL:
        return tuple(float(v) for v in x)
    raise SolveFailed(f"{label.value}: transporter solve did not converge")


def transporter(label: GroupLabel | str, p: np.ndarray, q: np.ndarray,
                tol: float = sl2.DEFAULT_TOL) -> tuple[float, ...]:
    """Group parameters g with ``act(element(label, g), p) = q``.

    Closed form first; the numerical solve refines or replaces it when the
    closed-form residual exceeds the round-trip tolerance.
    """
    label = as_label(label)
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if not same_orbit(label, p, q, tol):
        raise NotSameOrbit(f"{label.value}: points lie on different orbits")
    x = _TRANSPORT[label](p, q, tol)
    if transport_residual(label, x, p, q) <= TRANSPORT_TOL:
        return tuple(float(v) for v in x)
    return solve_transporter(label, p, q, x0=x)


# --- branch boundaries ------------------------------------------------------

def boundary_distance(label: GroupLabel | str, p: np.ndarray) -> float:
    """Distance from p to the nearest classifier branch boundary, measured in
    the invariant polynomial that the branch tests (``inf`` if none)."""
    label = as_label(label)
    p11, p12, p21, p22 = _e(p)
    tr = p11 + p22
    if label is L.KxK:
        return math.sqrt(max(kxk_sum(p) - 2.0, 0.0))
    if label is L.AxA:
        k = p11 * p22
        return min(abs(k), abs(k - 1.0), max(abs(p12), abs(p21)), max(abs(p11), abs(p22)))
    if label is L.AxN:
        return min(abs(p11), abs(p21))
    if label in (L.NxN, L.GFN, L.AffxN, L.AffxAff, L.GFF):
        return abs(p21)
    if label is L.DiagAff:
        return min(abs(p21), abs(abs(tr) - 2.0))
    if label in (L.GFA, L.AffxA):
        return min(abs(p21), abs(p22))
    if label is L.DiagSL2:
        return abs(abs(tr) - 2.0)
    return math.inf
