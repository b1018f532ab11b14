"""One summary row per catalog label: properness, orbit census, quotient verdict."""
from __future__ import annotations

from . import orbit_space, polynomials, properness, sl2, stabilizers, survey
from .catalog import GroupLabel, as_label, spec


def summary_row(label: GroupLabel | str, samples: int, seed: int, tol: float = sl2.DEFAULT_TOL) -> dict:
    label = as_label(label)
    sp = spec(label)
    rep = survey.census(label, samples, seed, tol)
    cert = properness.certificate(label)
    reason = properness.proper_reason(label)
    dp = polynomials.direction_polynomial(label)
    return {
        "group": label.value,
        "dimension": sp.dim,
        "isomorphism_type": sp.iso_type.value,
        "proper": sp.proper,
        "properness_evidence": reason.value if reason else cert.kind.value,
        "orbit_classes": {c: v["distinct_ids"] for c, v in rep["by_class"].items()},
        "characters": sorted(rep["by_character"]),
        "direction_polynomial": dp.status.value,
        "stabilizer_families": [f.key for f in stabilizers.FAMILIES if f.label is label],
        "quotient": orbit_space.quotient_verdict(label).to_dict(),
    }


def summary_table(samples: int, seed: int, tol: float = sl2.DEFAULT_TOL, labels=None) -> list[dict]:
    return [summary_row(lab, samples, seed, tol) for lab in (labels or list(GroupLabel))]
