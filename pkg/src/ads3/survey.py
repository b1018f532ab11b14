"""Orbit censuses: bucket sampled points by orbit id.

Points come from three sources: Iwasawa samples, a fixed list of special
points, and stratum points with an exact zero entry.  Samples closer than
``10 tol`` to a classifier boundary are set aside rather than bucketed.
Sample i is always seeded by ``[seed, i]`` so that results do not depend
on how the work is split across workers.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import sl2
from .catalog import GroupLabel, as_label
from .classifier import OrbitId, boundary_distance, classify

SEEDED_POINTS: dict[str, np.ndarray] = {
    "I": sl2.I2, "-I": -sl2.I2, "J": sl2.J, "-J": -sl2.J,
    "I+E12": sl2.I2 + sl2.E12, "I-E12": sl2.I2 - sl2.E12,
    "-I+E12": -sl2.I2 + sl2.E12, "-I-E12": -sl2.I2 - sl2.E12,
    "I+E21": sl2.I2 + sl2.E21, "I-E21": sl2.I2 - sl2.E21,
    "-I+E21": -sl2.I2 + sl2.E21, "-I-E21": -sl2.I2 - sl2.E21,
}
# stratum points per random sample
STRATUM_FRACTION = 10
# classes whose ids are listed individually when there are at most this many
LIST_LIMIT = 32
# stratum streams are kept apart from the Iwasawa stream
_STRATUM_STREAM = 1


@dataclass(frozen=True)
class _Row:
    source: str
    orbit_class: str
    character: str
    oid: OrbitId


def _classify_chunk(args) -> list:
    label, seed, tol, kind, lo, hi = args
    out = []
    for i in range(lo, hi):
        if kind == "sample":
            p = sl2.sample_point([seed, i])
            if boundary_distance(label, p) <= 10.0 * tol:
                out.append(None)
                continue
        else:
            p = sl2.sample_stratum_point([seed, _STRATUM_STREAM, i])
        r = classify(label, p, tol)
        out.append(_Row(kind, r.orbit_class.value, r.character.value, r.orbit_id))
    return out


def _chunks(n: int, workers: int) -> list[tuple[int, int]]:
    size = max(1, -(-n // max(1, workers * 4)))
    return [(lo, min(n, lo + size)) for lo in range(0, n, size)]


def _run(label, seed, tol, kind, n, workers) -> list:
    jobs = [(label, seed, tol, kind, lo, hi) for lo, hi in _chunks(n, workers)]
    if workers <= 1 or n < 200:
        parts = [_classify_chunk(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_classify_chunk, jobs))
    return [r for part in parts for r in part]


def distinct_ids(ids: list[OrbitId]) -> list[OrbitId]:
    """Representatives of the distinct orbits among ``ids`` (sorted, deterministic)."""
    groups: dict[tuple, list[OrbitId]] = {}
    for oid in ids:
        groups.setdefault(oid.key(), []).append(oid)
    reps = []
    for key in sorted(groups):
        for oid in sorted(groups[key], key=lambda o: o.continuous):
            if not reps or not reps[-1].matches(oid):
                reps.append(oid)
    return reps


def census(label: GroupLabel | str, samples: int, seed: int = 0, tol: float = sl2.DEFAULT_TOL,
           workers: int = 1, stratum: int | None = None) -> dict:
    """Census of orbit ids over samples, seeded points and stratum points."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    label = as_label(label)
    n_stratum = samples // STRATUM_FRACTION if stratum is None else stratum
    rows = _run(label, seed, tol, "sample", samples, workers)
    excluded = sum(r is None for r in rows)
    rows = [r for r in rows if r is not None]
    seeded = {}
    for name, p in SEEDED_POINTS.items():
        r = classify(label, p, tol)
        seeded[name] = r
        rows.append(_Row("seeded", r.orbit_class.value, r.character.value, r.orbit_id))
    rows += _run(label, seed, tol, "stratum", n_stratum, workers)

    by_class: dict[str, list[OrbitId]] = {}
    for r in rows:
        by_class.setdefault(r.orbit_class, []).append(r.oid)
    classes = {}
    for cls in sorted(by_class):
        reps = distinct_ids(by_class[cls])
        entry = {"points": len(by_class[cls]), "distinct_ids": len(reps)}
        if len(reps) <= LIST_LIMIT:
            entry["ids"] = [str(o) for o in reps]
        classes[cls] = entry
    characters = {}
    for ch in sorted({r.character for r in rows}):
        sub = [r.oid for r in rows if r.character == ch]
        characters[ch] = {"points": len(sub), "distinct_ids": len(distinct_ids(sub))}
    return {
        "group": label.value,
        "samples": samples,
        "seed": seed,
        "tol": tol,
        "stratum_points": n_stratum,
        "excluded_near_boundary": excluded,
        "by_class": classes,
        "by_character": characters,
        "by_source": dict(sorted(Counter(r.source for r in rows).items())),
        "seeded": {name: {"class": r.orbit_class.value, "character": r.character.value,
                          "id": str(r.orbit_id)} for name, r in seeded.items()},
    }


def class_count(report: dict, cls: str) -> int:
    """Distinct ids of one orbit class in a census report (0 if absent)."""
    return report["by_class"].get(cls, {}).get("distinct_ids", 0)


def character_count(report: dict, character: str) -> int:
    return report["by_character"].get(character, {}).get("distinct_ids", 0)
