"""The verification suite behind ``ads3 verify``.

Every check yields a status: ``pass``, ``fail``, or ``expected-flag`` for a
known deviation of a circulating formula or statement that the library
documents and replaces.  ``margin`` is the signed distance to the
threshold (positive or zero when the threshold is met).
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import catalog, claims, orbit_space, polynomials, properness, sl2, stabilizers, survey
from .catalog import GroupLabel, as_label, element, spec
from .classifier import affxaff_printed, affxn_printed, classify, transport_residual, transporter
from .engine import CausalCharacter
from .polynomials import PolyStatus

PASS, FAIL, FLAG = "pass", "fail", "expected-flag"

EXP_TOL = 1e-12
POLY_TOL = 1e-9
TRANSPORT_TOL = 1e-8
TRANSPORT_PAIRS = 100
FLOW_POINTS = 100
FALSIFY_TRIALS = 500
N_MAX = 25
LIMIT_TOL = 1e-6

# census expectations: (orbit class or causal character, comparison, count)
EXPECTED_CENSUS = {
    GroupLabel.AxA: (("class", "Singular", "==", 4),),
    GroupLabel.AxN: (("character", "DegenerateSurface", "==", 4),),
    GroupLabel.GFN: (("character", "DegenerateSurface", "==", 2),),
    GroupLabel.AffxA: (("class", "Exceptional", "==", 4), ("class", "OpenOrbit", "==", 4)),
    GroupLabel.AffxN: (("class", "Exceptional", "==", 2), ("class", "OpenOrbit", "==", 2)),
    GroupLabel.AffxAff: (("class", "Exceptional", "==", 2), ("class", "OpenOrbit", "==", 2)),
    GroupLabel.GFF: (("class", "OpenOrbit", "==", 2), ("class", "Singular", ">=", 50)),
    GroupLabel.DiagAff: (("class", "FixedPoint", "==", 2),),
}


@dataclass
class Check:
    name: str
    status: str
    margin: float
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "margin": _finite(self.margin)}


def _finite(x: float) -> float:
    if math.isnan(x):
        return 0.0
    return max(-1e300, min(1e300, float(x)))


def error_check(name, err, tol, flag=False, **detail) -> Check:
    ok = err <= tol
    status = PASS if ok else (FLAG if flag else FAIL)
    return Check(name, status, tol - err, {"error": _finite(err), "tol": tol, **detail})


def flag_check(name, ok, margin=0.0, flag=False, **detail) -> Check:
    return Check(name, PASS if ok else (FLAG if flag else FAIL), margin, detail)


# --- global ---------------------------------------------------------------------

def exp_identity_error() -> float:
    """exp(tX), exp(tY), exp(tZ) against A_t, N_t, K_t on 101 points of [-5, 5]."""
    worst = 0.0
    for t in np.linspace(-5.0, 5.0, 101):
        for m, ref in ((sl2.X, sl2.a_t(t)), (sl2.Y, sl2.n_t(t)), (sl2.Z, sl2.k_t(t))):
            worst = max(worst, float(np.max(np.abs(sl2.exp_traceless(t * m) - ref))))
    return worst


def global_checks() -> list[Check]:
    return [error_check("exp.identities", exp_identity_error(), EXP_TOL)]


# --- per label ------------------------------------------------------------------

def _lie(label) -> list[Check]:
    flow = max(catalog.flow_residual(label, sl2.sample_point([0, 5, i])) for i in range(FLOW_POINTS))
    return [
        error_check("lie.bracket_closure", catalog.bracket_closure_residual(label), 1e-12),
        error_check("lie.flow", flow, catalog.FLOW_TOL),
    ]


def polynomial_errors(label, pairs: int, seed: int) -> dict:
    worst = {"exact": 0.0}
    for i in range(pairs):
        p = sl2.sample_point([seed, 3, i])
        d = polynomials.sample_directions(label, np.random.default_rng([seed, 4, i]))
        for k, v in polynomials.identity_errors(label, p, d).items():
            worst[k] = max(worst.get(k, 0.0), v)
    return worst


def _poly(label, samples, seed) -> list[Check]:
    dp = polynomials.direction_polynomial(label)
    errs = polynomial_errors(label, samples, seed)
    out = [error_check("poly.exact", errs["exact"], POLY_TOL)]
    if "printed" in errs:
        out.append(error_check("poly.printed", errs["printed"], POLY_TOL, flag=dp.status is PolyStatus.CORRECTED,
                        note=dp.note))
    return out


def _classify(label, samples, seed, tol) -> list[Check]:
    rep = claims.reconcile(label, samples, seed, tol)
    near = max(claims.BOUNDARY_EPS, 10.0 * tol)
    flagged = rep.flagged_sets
    unexpected = flagged - claims.EXPECTED_FLAGS
    return [
        flag_check("classify.engine_agreement", rep.agreement_rate >= claims.AGREEMENT_TARGET,
              rep.agreement_rate - claims.AGREEMENT_TARGET, rate=rep.agreement_rate),
        flag_check("classify.mismatch_boundary", rep.max_mismatch_distance <= near,
              near - rep.max_mismatch_distance, mismatches=len(rep.mismatches)),
        Check("claims.reconcile", FAIL if unexpected else (FLAG if flagged else PASS), -float(len(unexpected)),
              {"checked": rep.claim_checks, "flagged": sorted(flagged), "unexpected": sorted(unexpected)}),
    ]


def transporter_error(label, pairs: int, seed: int) -> float:
    worst = 0.0
    k = spec(label).param_count
    for i in range(pairs):
        p = sl2.sample_point([seed, 6, i])
        q = catalog.act(element(label, np.random.default_rng([seed, 7, i]).uniform(-1.5, 1.5, size=k)), p)
        worst = max(worst, transport_residual(label, transporter(label, p, q), p, q))
    return worst


def printed_transport_error(label, pairs: int, seed: int) -> float:
    solve = {GroupLabel.AffxN: affxn_printed, GroupLabel.AffxAff: affxaff_printed}[label]
    k = spec(label).param_count
    worst = 0.0
    for i in range(pairs):
        p = sl2.sample_point([seed, 8, i])
        q = catalog.act(element(label, np.random.default_rng([seed, 9, i]).uniform(-1.5, 1.5, size=k)), p)
        worst = max(worst, transport_residual(label, solve(p, q), p, q))
    return worst


def _transport(label, seed) -> list[Check]:
    out = [error_check("transporter.roundtrip", transporter_error(label, TRANSPORT_PAIRS, seed), TRANSPORT_TOL)]
    if label in (GroupLabel.AffxN, GroupLabel.AffxAff):
        out.append(error_check("transporter.printed", printed_transport_error(label, TRANSPORT_PAIRS, seed),
                        TRANSPORT_TOL))
    return out


def _stabilizers(label, seed) -> list[Check]:
    out = []
    for fam in stabilizers.FAMILIES:
        if fam.label is not label:
            continue
        printed = stabilizers.check_family(fam, 10, seed, "printed")
        chk = error_check(f"stabilizer.{fam.key}", printed, stabilizers.FIX_TOL,
                   flag=fam.status is PolyStatus.CORRECTED, note=fam.note)
        if chk.status == FLAG:
            exact = stabilizers.check_family(fam, 10, seed, "exact")
            chk.detail["exact_error"] = exact
            if exact > stabilizers.FIX_TOL:
                chk.status = FAIL
        out.append(chk)
    return out


def proper_character_problems(label, samples: int, seed: int, tol: float) -> list[str]:
    """Orbit classes and characters expected on samples of a proper label."""
    label = as_label(label)
    problems = []
    for i in range(samples):
        p = sl2.sample_point([seed, 10, i])
        r = classify(label, p, tol)
        if r.character in (CausalCharacter.SPACELIKE_SURFACE, CausalCharacter.SPACELIKE_CURVE):
            problems.append(f"space-like orbit at sample {i}")
        if label is GroupLabel.AffxI:
            want = CausalCharacter.DEGENERATE_SURFACE
        elif label is GroupLabel.KxK and math.sqrt(max(float(np.sum(p * p)) - 2.0, 0.0)) <= tol:
            want = CausalCharacter.TIMELIKE_CURVE
        else:
            want = CausalCharacter.LORENTZIAN_SURFACE
        if r.character is not want:
            problems.append(f"sample {i}: {r.character.value}, expected {want.value}")
        if label in (GroupLabel.AxK, GroupLabel.NxK, GroupLabel.GFK) and r.stabilizer.dim != 0:
            problems.append(f"sample {i}: nontrivial stabilizer")
    if label is GroupLabel.KxK and classify(label, sl2.I2, tol).character is not CausalCharacter.TIMELIKE_CURVE:
        problems.append("orbit of I is not a time-like curve")
    return problems


def _properness(label, samples, seed, tol) -> list[Check]:
    out = []
    if spec(label).proper:
        rep = properness.falsify_properness(label, min(FALSIFY_TRIALS, samples), seed)
        out.append(flag_check("properness.falsification", rep.events == 0, -float(rep.events), **rep.to_dict()))
        probs = proper_character_problems(label, min(samples, 1000), seed, tol)
        out.append(flag_check("properness.orbit_characters", not probs, -float(len(probs)), problems=probs[:5]))
        return out
    cert = properness.certificate(label)
    chk = properness.check_certificate(cert, N_MAX, LIMIT_TOL)
    # the GFN witness is documented as outside the group; the action is proper
    gfn = label is GroupLabel.GFN and not chk.membership
    margin = 0.0
    if cert.kind is properness.CertificateKind.ESCAPING_SEQUENCE and not math.isnan(chk.growth):
        margin = math.log10(max(chk.growth, 1e-300)) - 6.0
    if not chk.passed:
        margin = min(margin, -1.0)
    out.append(flag_check("properness.certificate", chk.passed, margin, flag=gfn, **chk.to_dict()))
    if label in (GroupLabel.AxN, GroupLabel.GFN):
        rep = properness.falsify_properness(label, 20, seed)
        out.append(flag_check("properness.ray_events", rep.ray_events >= 1, float(rep.ray_events - 1),
                         flag=label is GroupLabel.GFN, **rep.to_dict()))
    return out


def topology_checks(label, samples, seed) -> list[Check]:
    out = []
    v = orbit_space.quotient_verdict(label)
    proper = spec(label).proper
    out.append(flag_check("topology.verdict_consistency",
                     v.hausdorff == proper and (v.proper_model is not None) == proper, **v.to_dict()))
    fs = orbit_space.finite_space(label)
    if fs is not None:
        r = orbit_space.topology_checks(fs)
        ok = r.covers and r.intersection_closed and r.t0 and not r.hausdorff and r.distinct_ids
        out.append(flag_check("topology.finite_space", ok, **r.to_dict()))
    rel = orbit_space.closure_catalog(label)
    if rel is not None:
        pairs = [orbit_space.check_pair(label, c, N_MAX, LIMIT_TOL) for c in rel.pairs]
        bad = [c.to_dict() for c in pairs if not c.passed]
        out.append(flag_check("topology.closure_pairs", not bad, -float(len(bad)), pairs=len(pairs), failures=bad))
        if fs is not None:
            out.append(flag_check("topology.closure_matches_preorder", orbit_space.closure_matches_topology(rel, fs)))
        controls = [orbit_space.check_pair(label, orbit_space.swapped(c), N_MAX, LIMIT_TOL).passed
                    for c in rel.pairs if c.kind == "orbit"]
        out.append(flag_check("topology.swapped_controls_rejected", not any(controls), -float(sum(controls))))
    if proper:
        m = orbit_space.model_check(label, samples, seed)
        ok = m["monotone"]
        if label is GroupLabel.KxK:
            ok = ok and m["min"] >= 2.0 - 1e-12 and m["transversal_range"][0] <= 2.0 + 1e-12
        elif orbit_space.quotient_verdict(label).proper_model is orbit_space.ProperModel.CIRCLE:
            ok = ok and abs(m["transversal_span"] - 2 * math.pi) <= 1e-6
        else:
            ok = ok and m["min"] < 0.0 < m["max"]
        out.append(flag_check("topology.model_invariant", ok, **m))
    if label is GroupLabel.GFN:
        ev = orbit_space.gfn_end_behaviour()
        out.append(flag_check("topology.degenerate_orbits_inseparable", not ev["separated"], flag=True,
                         **{k: [list(e) for e in v] if k != "separated" else v for k, v in ev.items()}))
    return out


def _census(label, samples, seed, tol) -> list[Check]:
    if label not in EXPECTED_CENSUS:
        return []
    return census_checks(label, survey.census(label, samples, seed, tol))


def census_checks(label, rep: dict) -> list[Check]:
    """Expected orbit counts against a census report (none for labels without expectations)."""
    out = []
    for axis, name, op, want in EXPECTED_CENSUS.get(as_label(label), ()):
        got = survey.class_count(rep, name) if axis == "class" else survey.character_count(rep, name)
        if op == ">=":
            # the continuum proxy scales with the number of stratum points
            want = min(want, rep["stratum_points"] // 4)
            ok, margin = got >= want, float(got - want)
        else:
            ok, margin = got == want, -float(abs(got - want))
        out.append(flag_check(f"census.{name}", ok, margin, observed=got, expected=want, op=op))
    return out


def label_checks(label: GroupLabel | str, samples: int, seed: int, tol: float) -> list[Check]:
    label = as_label(label)
    checks = (_lie(label) + _poly(label, samples, seed) + _classify(label, samples, seed, tol)
              + _transport(label, seed) + _stabilizers(label, seed)
              + _properness(label, samples, seed, tol) + topology_checks(label, samples, seed)
              + _census(label, samples, seed, tol))
    for c in checks:
        c.name = f"{label.value}.{c.name}"
    return checks


def _label_job(args):
    return label_checks(*args)


def run_suite(labels, samples: int = 1000, seed: int = 0, tol: float = sl2.DEFAULT_TOL,
              workers: int = 1) -> list[Check]:
    """Global checks followed by per-label checks, in catalog order."""
    labels = [as_label(lab) for lab in labels]
    jobs = [(lab, samples, seed, tol) for lab in labels]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_label_job, jobs))
    else:
        parts = [_label_job(j) for j in jobs]
    return global_checks() + [c for part in parts for c in part]


def suite_passed(checks: list[Check]) -> bool:
    return all(c.status != FAIL for c in checks)
