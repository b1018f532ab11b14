"""Evidence for the properness column of the catalog.

Nonproper labels carry a certificate: either an escaping sequence
``(g_n, p_n)`` with ``p_n`` and ``g_n . p_n`` convergent while ``g_n``
diverges, or a noncompact one-parameter stabilizer at a fixed point.  A
certificate only counts if every ``g_n`` is an element of the group, which
:func:`verify_certificate` checks through :func:`catalog.params_of`.

Proper labels carry a structural reason and a randomized falsification
search that looks for escaping pairs and must find none.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import sl2
from .catalog import GroupLabel, IsometryPair, act, as_label, element, params_of, spec
from .engine import stabilizer_coefficients, combine

STAB_TIMES = (-10.0, -5.0, -1.0, 1.0, 5.0, 10.0)
STAB_FIX_TOL = 1e-10
WINDOW = 10.0


class CertificateKind(str, enum.Enum):
    ESCAPING_SEQUENCE = "EscapingSequence"
    NONCOMPACT_STABILIZER = "NoncompactStabilizer"


class ProperReason(str, enum.Enum):
    COMPACT_FACTOR = "CompactFactor"
    FREE_SEQUENCE_ARGUMENT = "FreeSequenceArgument"
    LEFT_TRANSLATION = "LeftTranslation"


@dataclass(frozen=True)
class NonProperCertificate:
    label: GroupLabel
    kind: CertificateKind
    # escaping sequence
    pair: Optional[Callable[[int], IsometryPair]] = None
    point: Optional[Callable[[int], np.ndarray]] = None
    image: Optional[Callable[[int], np.ndarray]] = None
    limit_p: Optional[np.ndarray] = None
    limit_q: Optional[np.ndarray] = None
    # noncompact stabilizer
    base_point: Optional[np.ndarray] = None
    stab_direction: Optional[tuple[np.ndarray, np.ndarray]] = None
    note: str = ""

    def describe(self) -> dict:
        out = {"group": self.label.value, "kind": self.kind.value, "note": self.note}
        if self.kind is CertificateKind.ESCAPING_SEQUENCE:
            out["limit_p"] = _flat(self.limit_p)
            out["limit_q"] = _flat(self.limit_q)
        else:
            out["base_point"] = _flat(self.base_point)
            out["stab_direction"] = [_flat(self.stab_direction[0]), _flat(self.stab_direction[1])]
        return out


def _flat(m) -> list[float]:
    return [float(x) for x in np.asarray(m).ravel()]


def _pair_size(g: IsometryPair) -> float:
    return max(float(np.max(np.abs(g.g1))), float(np.max(np.abs(g.g2))))


# --- escaping sequences -------------------------------------------------------

def _axn_point(n: int) -> np.ndarray:
    return sl2.mat(math.exp(-n), 1.0, -1.0, 0.0)


def _axn_image(n: int) -> np.ndarray:
    # A_n p_n N_{-e^n}: the e^n terms cancel symbolically
    return sl2.mat(1.0, 0.0, -math.exp(-n), 1.0)


def _axn_cert() -> NonProperCertificate:
    return NonProperCertificate(
        GroupLabel.AxN, CertificateKind.ESCAPING_SEQUENCE,
        pair=lambda n: IsometryPair(sl2.a_t(n), sl2.n_t(math.exp(n))),
        point=_axn_point, image=_axn_image,
        limit_p=sl2.J.copy(), limit_q=sl2.I2.copy(),
    )


def _gfn_cert() -> NonProperCertificate:
    # the catalogued sequence; its pairs are not elements of GFN (see verify)
    return NonProperCertificate(
        GroupLabel.GFN, CertificateKind.ESCAPING_SEQUENCE,
        pair=lambda n: IsometryPair(sl2.f_ts(n, 0.0), sl2.n_t(math.exp(n))),
        point=_axn_point, image=_axn_image,
        limit_p=sl2.J.copy(), limit_q=sl2.I2.copy(),
        note="pairs (F_{n,0}, N_{e^n}) as catalogued",
    )


# --- noncompact stabilizers ---------------------------------------------------

def _noncompactness(v: np.ndarray) -> float:
    """-det(V)/|V|^2: positive for hyperbolic, zero for nilpotent, negative for elliptic."""
    return -sl2.det(v) / max(float(np.sum(v * v)), 1e-300)


def noncompact_stabilizer_direction(label: GroupLabel | str, p: np.ndarray,
                                    tol: float = sl2.DEFAULT_TOL) -> Optional[tuple[np.ndarray, np.ndarray]]:
    """A stabilizer direction whose one-parameter group is unbounded, if any.

    Candidates are kernel basis vectors and their pairwise sums and
    differences; the least elliptic one is kept.
    """
    ker = stabilizer_coefficients(label, p, tol)
    if ker.shape[0] == 0:
        return None
    cands = list(ker)
    for i in range(len(ker)):
        for j in range(i + 1, len(ker)):
            cands += [ker[i] + ker[j], ker[i] - ker[j]]
    best, score = None, -math.inf
    for c in cands:
        v, w = combine(label, c)
        s = min(_noncompactness(v) if np.any(v) else math.inf,
                _noncompactness(w) if np.any(w) else math.inf)
        if s > score:
            best, score = (v, w), s
    if score < -1e-12:
        return None
    v, w = best
    scale = max(float(np.max(np.abs(v))), float(np.max(np.abs(w))))
    return v / scale, w / scale


def _stab_cert(label: GroupLabel) -> NonProperCertificate:
    d = noncompact_stabilizer_direction(label, sl2.I2)
    return NonProperCertificate(label, CertificateKind.NONCOMPACT_STABILIZER,
                                base_point=sl2.I2.copy(), stab_direction=d)


_ESCAPING = {GroupLabel.AxN: _axn_cert, GroupLabel.GFN: _gfn_cert}


def certificate(label: GroupLabel | str) -> Optional[NonProperCertificate]:
    label = as_label(label)
    if spec(label).proper:
        return None
    if label in _ESCAPING:
        return _ESCAPING[label]()
    return _stab_cert(label)


# --- verification -------------------------------------------------------------

@dataclass
class CertificateCheck:
    label: GroupLabel
    kind: CertificateKind
    passed: bool
    membership: bool
    limit_p_error: float = math.nan
    limit_q_error: float = math.nan
    growth: float = math.nan
    fixation_error: float = math.nan
    image_consistency: float = math.nan
    in_stabilizer_algebra: Optional[bool] = None
    problems: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "group": self.label.value,
            "kind": self.kind.value,
            "passed": self.passed,
            "membership": self.membership,
            "limit_p_error": self.limit_p_error,
            "limit_q_error": self.limit_q_error,
            "growth": self.growth,
            "fixation_error": self.fixation_error,
            "image_consistency": self.image_consistency,
            "in_stabilizer_algebra": self.in_stabilizer_algebra,
            "problems": list(self.problems),
        }


def _check_escaping(cert: NonProperCertificate, n_max: int, tol: float) -> CertificateCheck:
    label = cert.label
    ns = range(1, n_max + 1)
    members = [params_of(label, cert.pair(n)) is not None for n in ns]
    dp = [float(np.max(np.abs(cert.point(n) - cert.limit_p))) for n in ns]
    dq = [float(np.max(np.abs(cert.image(n) - cert.limit_q))) for n in ns]
    # closed-form images against direct products where they do not overflow
    consist = 0.0
    for n in range(1, min(n_max, 12) + 1):
        direct = act(cert.pair(n), cert.point(n))
        consist = max(consist, float(np.max(np.abs(direct - cert.image(n)))) / max(1.0, _pair_size(cert.pair(n))))
    growth = _pair_size(cert.pair(n_max))
    chk = CertificateCheck(label, cert.kind, False, all(members), dp[-1], dq[-1], growth,
                           image_consistency=consist)
    if not all(members):
        first = next(n for n, m in zip(ns, members) if not m)
        chk.problems.append(f"g_{first} is not an element of {label.value}")
    tail = slice(n_max // 2, None)
    if dp[-1] > tol or any(b > a * (1 + 1e-12) for a, b in zip(dp[tail], dp[tail][1:])):
        chk.problems.append("p_n does not converge to limit_p")
    if dq[-1] > tol or any(b > a * (1 + 1e-12) for a, b in zip(dq[tail], dq[tail][1:])):
        chk.problems.append("g_n . p_n does not converge to limit_q")
    if growth <= 1.0 / tol:
        chk.problems.append("g_n does not diverge")
    if consist > 1e-9:
        chk.problems.append("closed-form image disagrees with the direct product")
    chk.passed = not chk.problems
    return chk


def _in_algebra(label, p, d, tol) -> bool:
    ker = stabilizer_coefficients(label, p, tol)
    basis = spec(label).lie_basis
    flat = np.stack([np.concatenate([v.ravel(), w.ravel()]) for v, w in basis], axis=1)
    target = np.concatenate([d[0].ravel(), d[1].ravel()])
    coef, *_ = np.linalg.lstsq(flat, target, rcond=None)
    if np.linalg.norm(flat @ coef - target) > 1e-10:
        return False
    if ker.shape[0] == 0:
        return False
    resid = coef - ker.T @ (ker @ coef)
    return float(np.linalg.norm(resid)) <= 1e-10 * max(1.0, float(np.linalg.norm(coef)))


def _check_stabilizer(cert: NonProperCertificate, n_max: int, tol: float) -> CertificateCheck:
    label, p = cert.label, cert.base_point
    chk = CertificateCheck(label, cert.kind, False, True)
    if cert.stab_direction is None:
        chk.membership = False
        chk.problems.append("no noncompact stabilizer direction at the base point")
        return chk
    v, w = cert.stab_direction
    fix = 0.0
    members = True
    for t in STAB_TIMES:
        g = IsometryPair(sl2.exp_traceless(t * v), sl2.exp_traceless(t * w))
        members &= params_of(label, g) is not None
        fix = max(fix, float(np.max(np.abs(act(g, p) - p))))
    # growth: double t until the pair leaves the 1/tol ball, fixation relative to size
    t, growth, rel_fix = 10.0, 0.0, 0.0
    for _ in range(64):
        g = IsometryPair(sl2.exp_traceless(t * v), sl2.exp_traceless(t * w))
        growth = _pair_size(g)
        if not math.isfinite(growth):
            break
        rel_fix = max(rel_fix, float(np.max(np.abs(act(g, p) - p))) / growth ** 2)
        if growth > 1.0 / tol:
            break
        t *= 2.0
    chk.membership = members
    chk.fixation_error = fix
    chk.growth = growth
    chk.in_stabilizer_algebra = _in_algebra(label, p, cert.stab_direction, sl2.DEFAULT_TOL)
    if not members:
        chk.problems.append("stabilizer flow leaves the group")
    if fix > STAB_FIX_TOL or rel_fix > 1e-12:
        chk.problems.append("flow does not fix the base point")
    if not growth > 1.0 / tol:
        chk.problems.append("stabilizer flow stays bounded")
    if not chk.in_stabilizer_algebra:
        chk.problems.append("direction not in the stabilizer algebra")
    chk.passed = not chk.problems
    return chk


def check_certificate(cert: NonProperCertificate, n_max: int = 25, tol: float = 1e-6) -> CertificateCheck:
    if n_max < 5:
        raise ValueError("n_max must be >= 5")
    if cert.kind is CertificateKind.ESCAPING_SEQUENCE:
        return _check_escaping(cert, n_max, tol)
    return _check_stabilizer(cert, n_max, tol)


def verify_certificate(cert: NonProperCertificate, n_max: int = 25, tol: float = 1e-6) -> bool:
    return check_certificate(cert, n_max, tol).passed


# --- proper labels --------------------------------------------------------------

_REASONS = {
    GroupLabel.AxK: ProperReason.COMPACT_FACTOR,
    GroupLabel.NxK: ProperReason.COMPACT_FACTOR,
    GroupLabel.KxK: ProperReason.COMPACT_FACTOR,
    GroupLabel.GFK: ProperReason.FREE_SEQUENCE_ARGUMENT,
    GroupLabel.AffxI: ProperReason.LEFT_TRANSLATION,
}


def proper_reason(label: GroupLabel | str) -> Optional[ProperReason]:
    return _REASONS.get(as_label(label))


def has_compact_factor(label: GroupLabel | str) -> bool:
    """True when one factor of every Lie basis pair is a multiple of Z (or zero)."""
    basis = spec(label).lie_basis

    def compact(ms):
        return all(np.allclose(m, 0.0) or np.allclose(m, m[1, 0] * sl2.Z) for m in ms)

    return compact([v for v, _ in basis]) or compact([w for _, w in basis])


@dataclass
class FalsificationReport:
    label: GroupLabel
    trials: int
    seed: int
    random_events: int
    ray_trials: int
    ray_events: int
    unreachable: int
    max_magnitude: float

    @property
    def events(self) -> int:
        return self.random_events + self.ray_events

    def to_dict(self) -> dict:
        return {
            "group": self.label.value,
            "trials": self.trials,
            "seed": self.seed,
            "events": self.events,
            "random_events": self.random_events,
            "ray_trials": self.ray_trials,
            "ray_events": self.ray_events,
            "unreachable": self.unreachable,
            "max_magnitude": self.max_magnitude,
        }


def _scale_to(label, d, target) -> Optional[float]:
    """Smallest lambda (coarse bisection) with max entry of element(lambda d) >= target."""
    def size(lam):
        with np.errstate(over="ignore"):
            return _pair_size(element(label, lam * d))
    hi = 1.0
    while size(hi) < target:
        hi *= 2.0
        if hi > 1e12:
            return None
    lo = 0.0
    # the target size is itself random, so 30 halvings are plenty
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        if size(mid) < target:
            lo = mid
        else:
            hi = mid
    return hi


def _in_window(m) -> bool:
    return bool(np.all(np.isfinite(m))) and float(np.max(np.abs(m))) <= WINDOW


def _escape_event(g: IsometryPair, p: np.ndarray) -> bool:
    with np.errstate(over="ignore", invalid="ignore"):
        return _in_window(p) and _in_window(act(g, p))


def falsify_properness(label: GroupLabel | str, trials: int, seed: int,
                       include_rays: bool = True) -> FalsificationReport:
    """Randomized search for escaping pairs.

    Trial i (seeded by ``[seed, i]``) picks a random parameter ray and a
    target size in [1e3, 1e6] for the group element, then tests a random
    window point and the pullback of another.  Catalog rays replay a
    label's escaping certificate at sizes in the same range, counting only
    pairs that are elements of the group.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    label = as_label(label)
    k = spec(label).param_count
    random_events = unreachable = 0
    max_mag = 0.0
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        d = rng.normal(size=k)
        d /= np.linalg.norm(d)
        target = 10.0 ** rng.uniform(3.0, 6.0)
        lam = _scale_to(label, d, target)
        p = sl2.sample_point([seed, i, 1])
        q = sl2.sample_point([seed, i, 2])
        if lam is None:
            unreachable += 1
            continue
        g = element(label, lam * d)
        max_mag = max(max_mag, _pair_size(g))
        ginv = IsometryPair(sl2.adj(g.g1), sl2.adj(g.g2))
        with np.errstate(over="ignore", invalid="ignore"):
            pulled = act(ginv, q)
        if _escape_event(g, p) or _escape_event(g, pulled):
            random_events += 1
    ray_trials = ray_events = 0
    cert = certificate(label) if include_rays else None
    if cert is not None and cert.kind is CertificateKind.ESCAPING_SEQUENCE:
        for n in range(7, 15):  # e^7 ~ 1e3 .. e^14 ~ 1e6
            g = cert.pair(n)
            ray_trials += 1
            if params_of(label, g) is None:
                continue
            max_mag = max(max_mag, _pair_size(g))
            if _escape_event(g, cert.point(n)):
                ray_events += 1
    return FalsificationReport(label, trials, seed, random_events, ray_trials, ray_events, unreachable, max_mag)


def stabilizer_scan(label: GroupLabel | str, samples: int, seed: int,
                    extra_points: tuple = ()) -> dict:
    """Stabilizer dimensions over Iwasawa samples plus extra points.

    Reports the points with nonzero stabilizer and whether every such
    direction generates a compact one-parameter group in both factors.
    """
    label = as_label(label)
    points = [sl2.sample_point([seed, i]) for i in range(samples)] + list(extra_points)
    nonempty = 0
    all_compact = True
    for p in points:
        ker = stabilizer_coefficients(label, p)
        if ker.shape[0]:
            nonempty += 1
            for c in ker:
                v, w = combine(label, c)
                for m in (v, w):
                    if np.any(m) and _noncompactness(m) > -1e-12:
                        all_compact = False
    return {"group": label.value, "points": len(points), "nonempty": nonempty, "compact": all_compact}
