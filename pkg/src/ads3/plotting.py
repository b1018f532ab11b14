"""Report figures, rendered off-screen to files."""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from . import orbit_space  # noqa: E402
from .catalog import GroupLabel, as_label  # noqa: E402

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _figure(width: float = 6.0, height: float | None = None):
    fig, ax = plt.subplots(figsize=(width, height or width * GOLDEN))
    return fig, ax


def _save(fig, path: Path) -> str:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def census_figure(report: dict, out_dir: str | Path) -> str:
    """Bar chart of points and distinct ids per orbit class."""
    classes = list(report["by_class"])
    points = [report["by_class"][c]["points"] for c in classes]
    ids = [report["by_class"][c]["distinct_ids"] for c in classes]
    x = np.arange(len(classes))
    fig, ax = _figure()
    ax.bar(x - 0.2, points, 0.4, label="points")
    ax.bar(x + 0.2, ids, 0.4, label="distinct ids")
    ax.set_xticks(x, classes)
    ax.set_yscale("log")
    ax.set_title(f"{report['group']} census, {report['samples']} samples")
    ax.legend()
    return _save(fig, Path(out_dir) / f"census_{report['group']}.png")


def closure_figure(label: GroupLabel | str, out_dir: str | Path, n_max: int = 25) -> str | None:
    """Distance to the limit point along each closure witness, log scale."""
    label = as_label(label)
    rel = orbit_space.closure_catalog(label)
    if rel is None:
        return None
    ns = np.arange(1, n_max + 1)
    fig, ax = _figure()
    for c in rel.pairs:
        if c.kind == "orbit":
            ds = [float(np.max(np.abs(c.image(n) - c.limit))) for n in ns]
        else:
            ds = [float(np.max(np.abs(c.witness(n)[1] - c.limit))) for n in ns]
        ax.semilogy(ns, np.maximum(ds, 1e-300), lw=1, label=f"{c.first} in cl({c.second})")
    ax.set_xlabel("n")
    ax.set_ylabel("distance to limit")
    ax.set_title(f"{label.value} closure witnesses")
    if len(rel.pairs) <= 8:
        ax.legend(fontsize=7)
    return _save(fig, Path(out_dir) / f"closure_{label.value}.png")


def specialization_figure(label: GroupLabel | str, out_dir: str | Path) -> str | None:
    """Hasse-style drawing of a finite orbit space: open orbits on top, arrows to adherent points."""
    label = as_label(label)
    t = orbit_space.finite_space(label)
    if t is None:
        return None
    rep = orbit_space.topology_checks(t)
    opens = {t.names[next(iter(b))] for b in t.basis if len(b) == 1}
    top = [n for n in t.names if n in opens]
    bottom = [n for n in t.names if n not in opens]
    pos = {n: (i - (len(top) - 1) / 2, 1.0) for i, n in enumerate(top)}
    pos.update({n: (i - (len(bottom) - 1) / 2, 0.0) for i, n in enumerate(bottom)})
    fig, ax = _figure()
    for low, high in rep.specialization:
        (x0, y0), (x1, y1) = pos[low], pos[high]
        ax.plot([x0, x1], [y0, y1], color="0.6", lw=1)
    for n, (x, y) in pos.items():
        ax.scatter([x], [y], s=60, color="k" if n in opens else "w", edgecolors="k", zorder=3)
        ax.annotate(n, (x, y), textcoords="offset points", xytext=(0, 8 if y else -14), ha="center", fontsize=8)
    ax.set_axis_off()
    ax.set_title(f"{label.value} orbit space (filled: open points)")
    return _save(fig, Path(out_dir) / f"topology_{label.value}.png")
