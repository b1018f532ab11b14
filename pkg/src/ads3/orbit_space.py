"""Orbit spaces: verdicts, finite non-Hausdorff topologies, closure witnesses.

Finite orbit spaces are stored as a point list (orbit ids of named
representatives) plus a basis.  Infinite nonproper spaces are described only
through closure relations, each backed by an explicit sequence whose limit
is checked numerically against an extended-precision evaluation.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import mpmath
import numpy as np

from . import sl2
from .catalog import GroupLabel, as_label
from .classifier import OrbitId, gfk_phase, gfn_log_invariant, kxk_sum, orbit_id, same_orbit
from .errors import MalformedBasis

MP_DPS = 60
EXACT_TOL = 1e-15


class ProperModel(str, enum.Enum):
    REAL_LINE = "RealLine"
    CIRCLE = "Circle"
    HALF_LINE = "HalfLine"


@dataclass(frozen=True)
class QuotientVerdict:
    hausdorff: bool
    locally_euclidean: bool
    finite: bool
    proper_model: Optional[ProperModel] = None

    def to_dict(self) -> dict:
        return {
            "hausdorff": self.hausdorff,
            "locally_euclidean": self.locally_euclidean,
            "finite": self.finite,
            "proper_model": self.proper_model.value if self.proper_model else None,
        }


L = GroupLabel
_PROPER_MODELS = {
    L.AxK: ProperModel.REAL_LINE,
    L.NxK: ProperModel.REAL_LINE,
    L.GFK: ProperModel.CIRCLE,
    L.AffxI: ProperModel.CIRCLE,
    L.KxK: ProperModel.HALF_LINE,
}
_LOCALLY_EUCLIDEAN = {L.AxN, L.GFN}
_FINITE = {L.AffxA, L.AffxN, L.AffxAff}


def quotient_verdict(label: GroupLabel | str) -> QuotientVerdict:
    """Catalogued verdict: proper labels get a model space, nonproper ones are non-Hausdorff."""
    label = as_label(label)
    if label in _PROPER_MODELS:
        return QuotientVerdict(True, True, False, _PROPER_MODELS[label])
    return QuotientVerdict(False, label in _LOCALLY_EUCLIDEAN, label in _FINITE)


# --- finite topologies ---------------------------------------------------------

@dataclass(frozen=True)
class FiniteTopology:
    points: tuple[OrbitId, ...]
    basis: tuple[frozenset, ...]
    names: tuple[str, ...] = ()
    label: Optional[GroupLabel] = None

    def index(self, name: str) -> int:
        return self.names.index(name)

    def to_dict(self) -> dict:
        return {
            "group": self.label.value if self.label else None,
            "points": [{"name": n, "id": str(p)} for n, p in zip(self.names, self.points)],
            "basis": [sorted(self.names[i] for i in b) for b in self.basis],
        }


_E21 = sl2.E21

REPS: dict[str, np.ndarray] = {
    "I": sl2.I2, "-I": -sl2.I2, "J": sl2.J, "-J": -sl2.J,
    "I+E21": sl2.I2 + _E21, "I-E21": sl2.I2 - _E21,
    "-I+E21": -sl2.I2 + _E21, "-I-E21": -sl2.I2 - _E21,
    "I+E12": sl2.I2 + sl2.E12, "I-E12": sl2.I2 - sl2.E12,
    "-I+E12": -sl2.I2 + sl2.E12, "-I-E12": -sl2.I2 - sl2.E12,
}

_AFFXA_NAMES = ("I+E21", "I-E21", "-I+E21", "-I-E21", "I", "-I", "J", "-J")
_AFFXA_BASIS = (
    {"I+E21"}, {"I-E21"}, {"-I+E21"}, {"-I-E21"},
    {"I", "I+E21", "I-E21"},
    {"-I", "-I+E21", "-I-E21"},
    {"J", "I-E21", "-I-E21"},
    {"-J", "I+E21", "-I+E21"},
)
_AFFXN_NAMES = ("I+E21", "I-E21", "I", "-I")
_AFFXN_BASIS = (
    {"I+E21"}, {"I-E21"},
    {"I", "I+E21", "I-E21"},
    {"-I", "I+E21", "I-E21"},
)


def make_topology(names, basis_by_name, label=None, points=None) -> FiniteTopology:
    names = tuple(names)
    idx = {n: i for i, n in enumerate(names)}
    basis = tuple(frozenset(idx[n] for n in b) for b in basis_by_name)
    if points is None:
        points = tuple(orbit_id(label, REPS[n]) for n in names) if label else tuple(names)
    return FiniteTopology(tuple(points), basis, names, label)


def finite_space(label: GroupLabel | str) -> Optional[FiniteTopology]:
    label = as_label(label)
    if label is L.AffxA:
        return make_topology(_AFFXA_NAMES, _AFFXA_BASIS, label)
    if label in (L.AffxN, L.AffxAff):
        return make_topology(_AFFXN_NAMES, _AFFXN_BASIS, label)
    return None


@dataclass
class TopologyReport:
    covers: bool
    intersection_closed: bool
    t0: bool
    hausdorff: bool
    open_set_count: int
    specialization: list  # (x, y) with x in closure of {y}, x != y
    non_hausdorff_witness: Optional[tuple]
    common_adherent: Optional[str]
    distinct_ids: bool

    def to_dict(self) -> dict:
        return {
            "covers": self.covers,
            "intersection_closed": self.intersection_closed,
            "t0": self.t0,
            "hausdorff": self.hausdorff,
            "open_set_count": self.open_set_count,
            "specialization": [list(p) for p in self.specialization],
            "non_hausdorff_witness": list(self.non_hausdorff_witness) if self.non_hausdorff_witness else None,
            "common_adherent": self.common_adherent,
            "distinct_ids": self.distinct_ids,
        }


def _open_sets(n: int, basis) -> set[frozenset]:
    opens = {frozenset()}
    for k in range(1, len(basis) + 1):
        for combo in itertools.combinations(basis, k):
            opens.add(frozenset().union(*combo))
    opens.add(frozenset(range(n)))
    return opens


def topology_checks(t: FiniteTopology) -> TopologyReport:
    n = len(t.points)
    names = t.names or tuple(str(i) for i in range(n))
    covers = frozenset().union(*t.basis) == frozenset(range(n))
    for a, b in itertools.combinations(t.basis, 2):
        inter = a & b
        if inter and inter != frozenset().union(*[c for c in t.basis if c <= inter]):
            raise MalformedBasis(f"{sorted(names[i] for i in a)} and {sorted(names[i] for i in b)} "
                                 "intersect outside any union of basis sets")
    nbhds = [[b for b in t.basis if x in b] for x in range(n)]
    # x in closure({y}) iff every basic neighborhood of x contains y
    spec_rel = [(names[x], names[y]) for x in range(n) for y in range(n)
                if x != y and all(y in b for b in nbhds[x])]
    rel = set(spec_rel)
    t0 = all(not ((a, b) in rel and (b, a) in rel) for a, b in rel)
    witness, adherent = None, None
    # prefer pairs where neither point specializes to the other
    pairs = sorted(itertools.combinations(range(n), 2),
                   key=lambda xy: (names[xy[0]], names[xy[1]]) in rel or (names[xy[1]], names[xy[0]]) in rel)
    for x, y in pairs:
        if all(bx & by for bx in nbhds[x] for by in nbhds[y]):
            witness = (names[x], names[y])
            common = [names[z] for z in range(n)
                      if all(z in b for b in nbhds[x]) and all(z in b for b in nbhds[y])]
            adherent = common[0] if common else None
            break
    distinct = len({str(p) for p in t.points}) == n
    return TopologyReport(covers, True, t0, witness is None, len(_open_sets(n, t.basis)),
                          spec_rel, witness, adherent, distinct)


# --- closure relations ----------------------------------------------------------

def _mp_a(t):
    return mpmath.matrix([[mpmath.e ** t, 0], [0, mpmath.e ** (-t)]])


def _mp_n(s):
    return mpmath.matrix([[1, s], [0, 1]])


def _mp_f(t, s):
    return mpmath.matrix([[mpmath.e ** t, s], [0, mpmath.e ** (-t)]])


def _mp_k(u):
    return mpmath.matrix([[mpmath.cos(u), -mpmath.sin(u)], [mpmath.sin(u), mpmath.cos(u)]])


_MP_I = mpmath.eye(2)
_MP_MAKERS: dict[GroupLabel, Callable] = {
    L.AxK: lambda t, u: (_mp_a(t), _mp_k(u)),
    L.NxK: lambda t, u: (_mp_n(t), _mp_k(u)),
    L.KxK: lambda t, u: (_mp_k(t), _mp_k(u)),
    L.AffxI: lambda t, s: (_mp_f(t, s), _MP_I),
    L.GFK: lambda t, s: (_mp_f(t, s), _mp_k(t)),
    L.AxA: lambda t, u: (_mp_a(t), _mp_a(u)),
    L.NxN: lambda t, u: (_mp_n(t), _mp_n(u)),
    L.AxN: lambda t, u: (_mp_a(t), _mp_n(u)),
    L.AffxA: lambda t, s, u: (_mp_f(t, s), _mp_a(u)),
    L.AffxN: lambda t, s, u: (_mp_f(t, s), _mp_n(u)),
    L.AffxAff: lambda t, s, t2, s2: (_mp_f(t, s), _mp_f(t2, s2)),
    L.DiagAff: lambda t, s: (_mp_f(t, s), _mp_f(t, s)),
    L.DiagSL2: lambda t, s, u: (_mp_a(t) * _mp_n(s) * _mp_k(u),) * 2,
    L.GFN: lambda t, s: (_mp_f(t, s), _mp_n(t)),
    L.GFF: lambda t, s, s2: (_mp_f(t, s), _mp_f(t, s2)),
    L.GFA: lambda t, s: (_mp_f(t, s), _mp_a(t)),
}


def act_mp(label: GroupLabel | str, params, p: np.ndarray) -> np.ndarray:
    """``g . p`` evaluated in extended precision, rounded to floats at the end."""
    with mpmath.workdps(MP_DPS):
        g1, g2 = _MP_MAKERS[as_label(label)](*params)
        pm = mpmath.matrix([[mpmath.mpf(float(x)) for x in row] for row in np.asarray(p)])
        q = g1 * pm * mpmath.inverse(g2)
        return np.array([[float(q[i, j]) for j in range(2)] for i in range(2)])


@dataclass(frozen=True)
class ClosurePair:
    """``first`` lies in the closure of ``second``.

    kind "orbit": ``witness(n)`` gives group parameters (mpmath numbers) with
    ``g_n . rep`` tending to ``limit``, a point of the first orbit; ``image(n)``
    is the closed form of ``g_n . rep``.
    kind "inseparable": ``witness(n)`` gives two points on one orbit tending
    to ``rep`` and ``limit``, so the two limit orbits cannot be separated.
    """

    first: str
    second: str
    rep: np.ndarray
    limit: np.ndarray
    witness: Callable
    image: Optional[Callable] = None
    kind: str = "orbit"


@dataclass(frozen=True)
class ClosureRelation:
    label: GroupLabel
    pairs: tuple[ClosurePair, ...]

    def to_dict(self) -> dict:
        return {
            "group": self.label.value,
            "pairs": [{"first": c.first, "second": c.second, "kind": c.kind} for c in self.pairs],
        }


def _exp(n):
    return mpmath.e ** n


def _m(a, b, c, d):
    return sl2.mat(a, b, c, d)


def _diag(a):
    return _m(a, 0.0, 0.0, 1.0 / a)


def _scaled(rep: np.ndarray, idx: tuple[int, int], factor: float) -> np.ndarray:
    """rep with one entry multiplied by factor (exact, no cancellation)."""
    q = rep.copy()
    q[idx] *= factor
    return q


def _rep_name(base: str, e: str) -> str:
    return f"{base}+{e}" if not e.startswith("-") else f"{base}{e}"


def _pair(first, second, rep, limit, witness, image):
    return ClosurePair(first, second, np.asarray(rep, dtype=float), np.asarray(limit, dtype=float),
                       witness, image)


def _axa_relation():
    pairs = []
    for sgn, name in ((1.0, "I"), (-1.0, "-I")):
        base = sgn * sl2.I2
        for s21 in (1.0, -1.0):
            rep = base + s21 * _E21
            pairs.append(_pair(name, _rep_name(name, "E21" if s21 > 0 else "-E21"), rep, base,
                               lambda n: (n, n),
                               lambda n, rep=rep: _scaled(rep, (1, 0), math.exp(-2 * n))))
        for s12 in (1.0, -1.0):
            rep = base + s12 * sl2.E12
            pairs.append(_pair(name, _rep_name(name, "E12" if s12 > 0 else "-E12"), rep, base,
                               lambda n: (-n, -n),
                               lambda n, rep=rep: _scaled(rep, (0, 1), math.exp(-2 * n))))
    for sgn, name in ((1.0, "J"), (-1.0, "-J")):
        base = sgn * sl2.J
        for s in (1.0, -1.0):
            rep = base + s * sl2.E11
            # A_t p A_{-u} scales p11 by e^{t-u} and p12 by e^{t+u}
            pairs.append(_pair(name, _rep_name(name, "E11" if s > 0 else "-E11"), rep, base,
                               lambda n: (-n, n),
                               lambda n, rep=rep: _scaled(rep, (0, 0), math.exp(-2 * n))))
            rep = base + s * sl2.E22
            pairs.append(_pair(name, _rep_name(name, "E22" if s > 0 else "-E22"), rep, base,
                               lambda n: (n, -n),
                               lambda n, rep=rep: _scaled(rep, (1, 1), math.exp(-2 * n))))
    return pairs


def _diag_flow_pairs(label, params_of_n, qs):
    """``q +- E21`` tends to the diagonal point q under ``(A_n, A_n)``-type flows."""
    pairs = []
    for a in qs:
        q = _diag(a)
        for s in (1.0, -1.0):
            rep = q + s * _E21
            pairs.append(_pair(f"diag({a:g})", f"diag({a:g}){'+' if s > 0 else '-'}E21", rep, q,
                               params_of_n, lambda n, rep=rep: _scaled(rep, (1, 0), math.exp(-2 * n))))
    return pairs


def _unipotent_pairs(label, params_of_n):
    """``+-I +- E12`` tends to +-I under ``(A_-n, A_-n)``-type flows."""
    pairs = []
    for sgn, name in ((1.0, "I"), (-1.0, "-I")):
        base = sgn * sl2.I2
        for s in (1.0, -1.0):
            rep = base + s * sl2.E12
            pairs.append(_pair(name, _rep_name(name, "E12" if s > 0 else "-E12"), rep, base,
                               params_of_n, lambda n, rep=rep: _scaled(rep, (0, 1), math.exp(-2 * n))))
    return pairs


def _affxa_relation():
    pairs = []
    for name, base in (("I", sl2.I2), ("-I", -sl2.I2)):
        for s in (1.0, -1.0):
            rep = base + s * _E21
            pairs.append(_pair(name, _rep_name(name, "E21" if s > 0 else "-E21"), rep, base,
                               lambda n: (n, 0, n),
                               lambda n, rep=rep: _scaled(rep, (1, 0), math.exp(-2 * n))))
    # (F_{n, sigma e^n}, A_{-n}) . (+-I + eps E21) = [[0, sigma eps'], [eps, +-e^{-2n}]]
    for first, second, sigma in (("J", "I-E21", 1), ("J", "-I-E21", -1),
                                 ("-J", "I+E21", -1), ("-J", "-I+E21", 1)):
        rep = REPS[second]
        limit = REPS[first]

        def image(n, rep=rep, limit=limit):
            return limit + rep[1, 1] * math.exp(-2 * n) * sl2.E22
        pairs.append(_pair(first, second, rep, limit, lambda n, sigma=sigma: (n, sigma * _exp(n), -n), image))
    return pairs


def _affxn_witnesses():
    """Four sequences (t, s, u) for (F_{t,s}, N_u) with closed-form images."""
    one = mpmath.mpf(1)
    return (
        ("I", "I+E21", lambda n: (n, one - _exp(n), one - _exp(n)),
         lambda n: _m(1.0, 0.0, math.exp(-n), 1.0)),
        ("-I", "I+E21", lambda n: (n, -one - _exp(n), one + _exp(n)),
         lambda n: _m(-1.0, 0.0, math.exp(-n), -1.0)),
        ("I", "I-E21", lambda n: (n, _exp(n) - one, _exp(n) - one),
         lambda n: _m(1.0, 0.0, -math.exp(-n), 1.0)),
        ("-I", "I-E21", lambda n: (n, _exp(n) + one, -_exp(n) - one),
         lambda n: _m(-1.0, 0.0, -math.exp(-n), -1.0)),
    )


def _affxn_relation(label):
    pairs = []
    for first, second, w, image in _affxn_witnesses():
        if label is L.AffxAff:
            w = (lambda n, w=w: (w(n)[0], w(n)[1], 0, w(n)[2]))
        pairs.append(_pair(first, second, REPS[second], REPS[first], w, image))
    return pairs


def _nxn_relation():
    """Singular orbits diag(a) and diag(b) are both limits of the orbit p21 = e^-n."""
    pairs = []
    for a, b in ((2.0, -0.5), (1.0, 3.0), (-1.0, 1.0)):
        def witness(n, a=a, b=b):
            e = math.exp(-n)
            return _m(a, 0.0, e, 1.0 / a), _m(b, 0.0, e, 1.0 / b)
        pairs.append(ClosurePair(f"diag({a:g})", f"diag({b:g})", _diag(a), _diag(b), witness,
                                 None, "inseparable"))
    return pairs


def closure_catalog(label: GroupLabel | str) -> Optional[ClosureRelation]:
    label = as_label(label)
    if label is L.AxA:
        pairs = _axa_relation()
    elif label is L.DiagAff:
        pairs = _diag_flow_pairs(label, lambda n: (n, 0), (2.0, -0.5)) + \
            _unipotent_pairs(label, lambda n: (-n, 0))
    elif label is L.GFA:
        pairs = _diag_flow_pairs(label, lambda n: (n, 0), (2.0, -0.5, 1.0))
    elif label is L.GFF:
        pairs = _diag_flow_pairs(label, lambda n: (n, 0, 0), (2.0, -0.5, 1.0))
    elif label is L.AffxA:
        pairs = _affxa_relation()
    elif label in (L.AffxN, L.AffxAff):
        pairs = _affxn_relation(label)
    elif label is L.NxN:
        pairs = _nxn_relation()
    elif label is L.DiagSL2:
        pairs = _unipotent_pairs(label, lambda n: (-n, 0, 0))
    else:
        return None
    return ClosureRelation(label, tuple(pairs))


@dataclass
class ClosureCheck:
    first: str
    second: str
    kind: str
    passed: bool
    final_distance: float
    closed_form_error: float
    problems: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "first": self.first,
            "second": self.second,
            "kind": self.kind,
            "passed": self.passed,
            "final_distance": self.final_distance,
            "closed_form_error": self.closed_form_error,
            "problems": list(self.problems),
        }


def _dist(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def _converges(ds, tol) -> bool:
    tail = ds[len(ds) // 2:]
    return ds[-1] <= tol and all(b <= a * (1 + 1e-12) + 1e-300 for a, b in zip(tail, tail[1:]))


def check_pair(label: GroupLabel, c: ClosurePair, n_max: int, tol: float) -> ClosureCheck:
    ns = range(1, n_max + 1)
    problems = []
    if c.kind == "inseparable":
        xs = [c.witness(n) for n in ns]
        d1 = [_dist(x, c.rep) for x, _ in xs]
        d2 = [_dist(y, c.limit) for _, y in xs]
        # points are built exactly, so the zero band can be tight
        if not all(same_orbit(label, x, y, tol=EXACT_TOL) for x, y in xs):
            problems.append("witness points lie on different orbits")
        if not (_converges(d1, tol) and _converges(d2, tol)):
            problems.append("witness points do not converge")
        if orbit_id(label, c.rep).matches(orbit_id(label, c.limit)):
            problems.append("limits lie on one orbit")
        return ClosureCheck(c.first, c.second, c.kind, not problems, max(d1[-1], d2[-1]), 0.0, problems)
    target = orbit_id(label, c.limit)
    source = orbit_id(label, c.rep)
    if target.matches(source):
        problems.append("first and second are the same orbit")
    cf_err = 0.0
    ds = []
    for n in ns:
        with mpmath.workdps(MP_DPS):
            params = c.witness(n)
        exact = act_mp(label, params, c.rep)
        closed = c.image(n) if c.image else exact
        cf_err = max(cf_err, _dist(closed, exact))
        ds.append(_dist(closed, c.limit))
    if cf_err > 1e-12:
        problems.append("closed form disagrees with the extended-precision product")
    if not _converges(ds, tol):
        problems.append("sequence does not converge to the limit point")
    return ClosureCheck(c.first, c.second, c.kind, not problems, ds[-1], cf_err, problems)


def swapped(c: ClosurePair) -> ClosurePair:
    """The reversed claim, driven by the same sequence (a negative control)."""
    return ClosurePair(c.second, c.first, c.limit, c.rep, c.witness, None, c.kind)


def verify_closure(rel: ClosureRelation, n_max: int = 25, tol: float = 1e-6) -> bool:
    if n_max < 5:
        raise ValueError("n_max must be >= 5")
    return all(check_pair(rel.label, c, n_max, tol).passed for c in rel.pairs)


def closure_matches_topology(rel: ClosureRelation, t: FiniteTopology) -> bool:
    """Closure pairs coincide with the nontrivial specialization relations of t."""
    pairs = {(c.first, c.second) for c in rel.pairs if c.kind == "orbit"}
    return pairs == set(topology_checks(t).specialization)


# --- proper model spaces --------------------------------------------------------

def model_invariant(label: GroupLabel | str, p: np.ndarray) -> float:
    """Continuous orbit invariant realizing the model space of a proper label."""
    label = as_label(label)
    p11, p12, p21, p22 = (float(x) for x in np.asarray(p).ravel())
    if label is L.AxK:
        return p11 * p21 + p12 * p22
    if label is L.NxK:
        return math.log(math.hypot(p21, p22))
    if label is L.KxK:
        return kxk_sum(p)
    if label is L.GFK:
        return math.remainder(gfk_phase(p), 2 * math.pi)
    if label is L.AffxI:
        return math.atan2(p22, p21)
    raise ValueError(f"{label.value} has no proper model")


# human-readable form of the invariant that parametrizes the orbit space
INVARIANT_FORMULAS = {
    L.AxK: "p11 p21 + p12 p22",
    L.NxK: "log |(p21, p22)|",
    L.KxK: "p11^2 + p12^2 + p21^2 + p22^2",
    L.GFK: "atan2(p22, p21) + log |(p21, p22)|  (mod 2 pi)",
    L.AffxI: "(p21, p22) / |(p21, p22)|",
    L.GFN: "p21 exp(-p22 / p21) for p21 != 0; sign p11 for p21 = 0",
}


# transversal curves through the orbit space, with the invariant strictly monotone
_TRANSVERSALS = {
    L.AxK: (lambda x: sl2.n_t(x), (-50.0, 50.0)),
    L.NxK: (lambda x: sl2.a_t(-x), (-20.0, 20.0)),
    L.KxK: (lambda x: sl2.a_t(x), (0.0, 10.0)),
    L.GFK: (lambda x: sl2.k_t(-x), (-math.pi, math.pi)),
    L.AffxI: (lambda x: sl2.k_t(-x), (-math.pi, math.pi)),
}


def model_check(label: GroupLabel | str, samples: int, seed: int) -> dict:
    """Range of the model invariant on samples, and monotonicity along a transversal."""
    label = as_label(label)
    vals = np.array([model_invariant(label, sl2.sample_point([seed, i])) for i in range(samples)])
    curve, (lo, hi) = _TRANSVERSALS[label]
    xs = np.linspace(lo, hi, 401)
    ys = np.array([model_invariant(label, curve(x)) for x in xs])
    if _PROPER_MODELS[label] is ProperModel.CIRCLE:
        ys = np.unwrap(ys)
    d = np.diff(ys)
    monotone = bool(np.all(d > 0) or np.all(d < 0))
    return {
        "group": label.value,
        "model": _PROPER_MODELS[label].value,
        "min": float(vals.min()),
        "max": float(vals.max()),
        "transversal_range": [float(ys.min()), float(ys.max())],
        "transversal_span": float(ys.max() - ys.min()),
        "monotone": monotone,
    }


# --- evidence against catalogued verdicts ---------------------------------------

def gfn_end_behaviour(eps: float = 1e-2) -> dict:
    """Which end of each principal branch accumulates at the two degenerate orbits.

    Near +-I the principal invariant ``ln|p21| - p22/p21`` diverges; the sign
    of the divergence on each side of p21 = 0 tells which ends of the two
    principal lines meet each degenerate orbit.
    """
    out = {}
    for name, base in (("I", sl2.I2), ("-I", -sl2.I2)):
        ends = []
        for s in (1.0, -1.0):
            p = sl2.project_to_ads(base + s * eps * _E21)
            ends.append(("+" if s > 0 else "-", "+inf" if gfn_log_invariant(p) > 0 else "-inf"))
        out[name] = ends
    shared = set(out["I"]) & set(out["-I"])
    out["separated"] = not shared
    return out
