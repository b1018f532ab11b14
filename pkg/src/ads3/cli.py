"""Command-line front end.

Every command prints one report with the keys ``tool_version``, ``config``,
``group``, ``results`` and ``checks``.  Exit codes: 0 success, 1 invalid
input, 2 verification failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import __version__, checks, engine, orbit_space, properness, sl2, survey, tables
from .catalog import GroupLabel, as_label
from .classifier import classify, orbit_id, same_orbit, transport_residual, transporter
from .errors import Ads3Error

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2
# |det - 1| beyond this is rejected instead of projected
PROJECT_LIMIT = 0.1

log = logging.getLogger("ads3")


class InputError(Exception):
    """Bad command-line input; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    group: Optional[GroupLabel]
    point: Optional[tuple[float, ...]]
    other: Optional[tuple[float, ...]]
    samples: int
    seed: int
    tol: float
    format: str

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "group": self.group.value if self.group else None,
            "point": list(self.point) if self.point else None,
            "other": list(self.other) if self.other else None,
            "samples": self.samples,
            "seed": self.seed,
            "tol": self.tol,
            "format": self.format,
        }


def default_tol() -> float:
    raw = os.environ.get("ADS3_TOL")
    if raw is None:
        return sl2.DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"ADS3_TOL={raw!r} is not a number") from None
    return tol


def parse_point(text: str, tol: float) -> np.ndarray:
    """Row-major ``p11,p12,p21,p22``, projected onto det = 1 when slightly off."""
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"malformed point {text!r}") from None
    if len(vals) != 4 or not all(math.isfinite(v) for v in vals):
        raise InputError(f"point needs 4 finite comma-separated numbers, got {text!r}")
    p = np.array(vals, dtype=float).reshape(2, 2)
    d = sl2.det(p)
    if abs(d - 1.0) <= 10.0 * tol:
        return p
    if abs(d - 1.0) > PROJECT_LIMIT:
        raise InputError(f"det = {d:.6g} is too far from 1 to project onto adS3")
    log.warning("det = %.12g; projecting the point onto det = 1", d)
    return sl2.project_to_ads(p, tol)


def _flat(p: np.ndarray) -> list[float]:
    return [float(x) for x in np.asarray(p).ravel()]


def _need(cfg: RunConfig, *fields: str) -> None:
    for f in fields:
        if getattr(cfg, f) is None:
            raise InputError(f"{cfg.command} needs --{f}")


def _p(values) -> np.ndarray:
    return np.array(values, dtype=float).reshape(2, 2)


# --- commands --------------------------------------------------------------------

def cmd_classify(cfg: RunConfig) -> tuple[list, list]:
    _need(cfg, "group", "point")
    p = _p(cfg.point)
    rec = classify(cfg.group, p, cfg.tol)
    dim = engine.orbit_dimension(cfg.group, p, cfg.tol)
    char = engine.causal_character(cfg.group, p, cfg.tol)
    agree = dim == rec.dimension and char is rec.character
    result = {"point": _flat(p), **rec.to_dict(), "engine": {"dimension": dim, "character": char.value},
              "agreement": agree}
    status = checks.PASS if agree else checks.FAIL
    return [result], [checks.Check("classify.engine_agreement", status, 0.0 if agree else -1.0)]


def cmd_orbit_id(cfg: RunConfig) -> tuple[list, list]:
    _need(cfg, "group", "point")
    oid = orbit_id(cfg.group, _p(cfg.point), cfg.tol)
    return [{"point": list(cfg.point), "orbit_id": oid.to_dict(), "key": str(oid)}], []


def cmd_same_orbit(cfg: RunConfig) -> tuple[list, list]:
    _need(cfg, "group", "point", "other")
    p, q = _p(cfg.point), _p(cfg.other)
    same = same_orbit(cfg.group, p, q, cfg.tol)
    result = {"point": _flat(p), "other": _flat(q), "same_orbit": same, "transporter": None}
    out = []
    if same:
        g = transporter(cfg.group, p, q, cfg.tol)
        res = transport_residual(cfg.group, g, p, q)
        result["transporter"] = {"params": list(g), "residual": res}
        out.append(checks.error_check("transporter.residual", res, checks.TRANSPORT_TOL))
    return [result], out


def cmd_survey(cfg: RunConfig, workers: int = 1, figures: Optional[str] = None) -> tuple[list, list]:
    _need(cfg, "group")
    rep = survey.census(cfg.group, cfg.samples, cfg.seed, cfg.tol, workers=workers)
    if figures:
        from . import plotting
        log.info("wrote %s", plotting.census_figure(rep, figures))
    return [rep], checks.census_checks(cfg.group, rep)


def cmd_properness(cfg: RunConfig) -> tuple[list, list]:
    _need(cfg, "group")
    label = cfg.group
    reason = properness.proper_reason(label)
    if reason is not None:
        rep = properness.falsify_properness(label, cfg.samples, cfg.seed)
        result = {"proper": True, "reason": reason.value, "falsification": rep.to_dict()}
        return [result], [checks.flag_check("properness.falsification", rep.events == 0, -float(rep.events))]
    cert = properness.certificate(label)
    chk = properness.check_certificate(cert, checks.N_MAX, checks.LIMIT_TOL)
    result = {"proper": False, "certificate": cert.describe(), "verification": chk.to_dict()}
    status = checks.PASS if chk.passed else checks.FAIL
    return [result], [checks.Check("properness.certificate", status, 0.0 if chk.passed else -1.0)]


def cmd_topology(cfg: RunConfig, figures: Optional[str] = None) -> tuple[list, list]:
    _need(cfg, "group")
    label = cfg.group
    result = {"verdict": orbit_space.quotient_verdict(label).to_dict()}
    if label in orbit_space.INVARIANT_FORMULAS:
        result["invariant"] = orbit_space.INVARIANT_FORMULAS[label]
    fs = orbit_space.finite_space(label)
    if fs is not None:
        result["finite_space"] = fs.to_dict()
        result["topology_checks"] = orbit_space.topology_checks(fs).to_dict()
    rel = orbit_space.closure_catalog(label)
    if rel is not None:
        result["closure"] = [orbit_space.check_pair(label, c, checks.N_MAX, checks.LIMIT_TOL).to_dict()
                             for c in rel.pairs]
    if label is GroupLabel.GFN:
        result["degenerate_orbit_ends"] = {k: v if k == "separated" else [list(e) for e in v]
                                           for k, v in orbit_space.gfn_end_behaviour().items()}
    if figures:
        from . import plotting
        for path in (plotting.closure_figure(label, figures), plotting.specialization_figure(label, figures)):
            if path:
                log.info("wrote %s", path)
    return [result], checks.topology_checks(label, cfg.samples, cfg.seed)


def cmd_tables(cfg: RunConfig) -> tuple[list, list]:
    labels = [cfg.group] if cfg.group else None
    return tables.summary_table(cfg.samples, cfg.seed, cfg.tol, labels), []


def cmd_verify(cfg: RunConfig, workers: int = 1) -> tuple[list, list]:
    labels = [cfg.group] if cfg.group else list(GroupLabel)
    suite = checks.run_suite(labels, cfg.samples, cfg.seed, cfg.tol, workers)
    flagged = [{"name": c.name, **{k: v for k, v in c.detail.items() if k in ("note", "flagged", "problems")}}
               for c in suite if c.status == checks.FLAG]
    summary = {
        "checks": len(suite),
        "passed": sum(c.status == checks.PASS for c in suite),
        "expected_flags": len(flagged),
        "failed": sum(c.status == checks.FAIL for c in suite),
        "flag_notes": flagged,
    }
    return [summary], suite


# --- output ----------------------------------------------------------------------

def build_report(cfg: RunConfig, results: list, check_list: list) -> dict:
    return {
        "tool_version": __version__,
        "config": cfg.to_dict(),
        "group": cfg.group.value if cfg.group else None,
        "results": results,
        "checks": [c.to_dict() for c in check_list],
    }


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None if math.isnan(x) else (1e308 if x > 0 else -1e308)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.generic):
        return _jsonable(x.item())
    return x


def render_json(report: dict) -> str:
    return json.dumps(_jsonable(report), indent=2, allow_nan=False) + "\n"


def render_md(report: dict) -> str:
    rep = _jsonable(report)
    lines = [f"# ads3 {rep['config']['command']}", "", f"- tool_version: {rep['tool_version']}",
             f"- group: {rep['group']}", "", "## config", ""]
    lines += [f"- {k}: {v}" for k, v in rep["config"].items()]
    lines += ["", "## results", "", "```json", json.dumps(rep["results"], indent=2), "```", "", "## checks", ""]
    if rep["checks"]:
        lines += ["| name | status | margin |", "| --- | --- | --- |"]
        lines += [f"| {c['name']} | {c['status']} | {c['margin']:.6g} |" for c in rep["checks"]]
    else:
        lines.append("none")
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--group", help="catalog label, e.g. AxK or AffxA")
    common.add_argument("--point", help="p11,p12,p21,p22 (row-major)")
    common.add_argument("--other", help="second point for same-orbit")
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None, help="default 1e-9 or $ADS3_TOL")
    common.add_argument("--format", choices=("json", "md"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--workers", type=int, default=1, help="worker processes (survey, verify)")
    common.add_argument("--figures", help="directory for figures (survey, topology)")
    common.add_argument("-v", "--verbose", action="store_true")
    parser = _Parser(prog="ads3", description="Orbit classification of isometric actions on adS3.")
    parser.add_argument("--version", action="version", version=f"ads3 {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in (
        ("classify", "orbit type and causal character of a point"),
        ("orbit-id", "complete orbit invariant of a point"),
        ("same-orbit", "orbit membership test with a transporter"),
        ("survey", "orbit census over samples and special points"),
        ("properness", "proper action evidence or non-properness certificate"),
        ("topology", "orbit space verdict and closure relations"),
        ("tables", "classification summary across the catalog"),
        ("verify", "full verification suite"),
    ):
        sub.add_parser(name, parents=[common], help=text, description=text)
    return parser


def _config(args) -> RunConfig:
    tol = args.tol if args.tol is not None else default_tol()
    if not (tol > 0 and math.isfinite(tol)):
        raise InputError("tol must be a positive number")
    if args.samples < 1:
        raise InputError("samples must be >= 1")
    if args.workers < 1:
        raise InputError("workers must be >= 1")
    try:
        group = as_label(args.group) if args.group else None
    except ValueError:
        raise InputError(f"unknown group {args.group!r}; choose from {[g.value for g in GroupLabel]}") from None
    point = tuple(_flat(parse_point(args.point, tol))) if args.point else None
    other = tuple(_flat(parse_point(args.other, tol))) if args.other else None
    return RunConfig(args.command, group, point, other, args.samples, args.seed, tol, args.format)


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    """Parse, execute and render; returns (exit code, rendered report)."""
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    cfg = _config(args)
    cmd = cfg.command
    if cmd == "classify":
        results, chk = cmd_classify(cfg)
    elif cmd == "orbit-id":
        results, chk = cmd_orbit_id(cfg)
    elif cmd == "same-orbit":
        results, chk = cmd_same_orbit(cfg)
    elif cmd == "survey":
        results, chk = cmd_survey(cfg, args.workers, args.figures)
    elif cmd == "properness":
        results, chk = cmd_properness(cfg)
    elif cmd == "topology":
        results, chk = cmd_topology(cfg, args.figures)
    elif cmd == "tables":
        results, chk = cmd_tables(cfg)
    else:
        results, chk = cmd_verify(cfg, args.workers)
    report = build_report(cfg, results, chk)
    text = render_md(report) if cfg.format == "md" else render_json(report)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        text = ""
    code = EXIT_OK if cmd in ("classify", "orbit-id", "same-orbit") or checks.suite_passed(chk) else EXIT_VERIFY
    return code, text


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        code, text = run(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Ads3Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
