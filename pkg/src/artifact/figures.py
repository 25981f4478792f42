"""Figures written next to suite reports."""

from __future__ import annotations

from math import sqrt
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import periods  # noqa: E402


def cone_slopes(path: Path, emax: int = 60) -> Path:
    """Slopes of the movable and nef cones and of the square-22 classes, over sqrt(e)."""
    es = [e for e in range(1, emax + 1) if periods.movable_classes_22(e)]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.plot(es, [float(periods.mu(e)) / sqrt(e) for e in es], "k_", ms=12, label="movable boundary")
    ax.plot(es, [float(periods.nu(e)) / sqrt(e) for e in es], "b_", ms=12, label="nef boundary")
    amp, mov = [], []
    for e in es:
        ample = periods.ample_classes_22(e)
        for c in periods.movable_classes_22(e):
            (amp if c in ample else mov).append((e, float(c.slope) / sqrt(e)))
    if amp:
        ax.scatter(*zip(*amp), c="g", marker="o", label="ample class")
    if mov:
        ax.scatter(*zip(*mov), facecolors="none", edgecolors="r", marker="o", label="movable, not ample")
    ax.set_xlabel("e")
    ax.set_ylabel("slope / sqrt(e)")
    ax.set_title("Square-22 divisibility-2 classes")
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def minimal_norms(path: Path, bound: int = 120) -> Path:
    k = periods.minimal_norm_table(bound, "K").table
    ku = periods.minimal_norm_table(bound, "K+U").table
    a = sorted(k)
    fig, ax = plt.subplots(figsize=(6, 4))
    w = 0.38
    ax.bar([x - w / 2 for x in a], [k[x] for x in a], w, label="v in K")
    ax.bar([x + w / 2 for x in a], [ku[x] for x in a], w, label="v in K + U")
    ax.set_xticks(a, [f"±{x}" for x in a])
    ax.set_xlabel("discriminant class a")
    ax.set_ylabel("minimal e = -v²/22")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


FIGURES = {
    "table1": [("cone_slopes.png", lambda p, cfg: cone_slopes(p))],
    "table2": [("minimal_norms.png", lambda p, cfg: minimal_norms(p, cfg.bound))],
}


def render_for(suite: str, outdir: Path, cfg) -> list[Path]:
    out = []
    for name, fn in FIGURES.get(suite, []):
        out.append(fn(outdir / name, cfg))
    return out
