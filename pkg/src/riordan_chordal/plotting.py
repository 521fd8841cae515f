"""Matplotlib figures written next to the CSV/SVG output."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .fchordal import LocalSolution  # noqa: E402
from .report import LocalArcs  # noqa: E402

ARC_STYLE = {
    "near_v1": ("#1f77b4", r"$\gamma$ near $V_1$"),
    "near_v2_P": ("#d62728", r"$\gamma_P$ near $V_2$"),
    "near_v2_Q": ("#2ca02c", r"$\gamma_Q$ near $V_2$"),
}


def plot_local_solution(arcs: LocalArcs, sol: LocalSolution, path, dpi: int = 150) -> Path:
    """Two panels: the sampled local arcs with the axis, and ``log10 |x_k|`` against ``k``."""
    path = Path(path)
    fig, (ax_arc, ax_coef) = plt.subplots(1, 2, figsize=(11, 4.5))

    v1, v2 = arcs.points["V1"], arcs.points["V2"]
    ax_arc.plot([float(v1[0]), float(v2[0])], [float(v1[1]), float(v2[1])], ls="--", color="0.6", lw=1)
    for key, (color, label) in ARC_STYLE.items():
        pts = getattr(arcs, key)
        ax_arc.plot([float(p[0]) for p in pts], [float(p[1]) for p in pts], color=color, lw=1.8, label=label)
    for name, (px, py) in arcs.points.items():
        ax_arc.plot(float(px), float(py), "ko", ms=4)
        ax_arc.annotate(name, (float(px), float(py)), textcoords="offset points", xytext=(4, 4))
    ax_arc.set_aspect("equal", adjustable="datalim")
    ax_arc.set_title("local arcs")
    ax_arc.legend(loc="best", fontsize=8)

    ks, mags = [], []
    for k, c in enumerate(sol.x):
        if k and c != 0:
            ks.append(k)
            mags.append(math.log10(abs(float(c))))
    ax_coef.plot(ks, mags, "o-", color="#1f77b4")
    ax_coef.set_xlabel("k")
    ax_coef.set_ylabel(r"$\log_{10}|x_k|$")
    ax_coef.set_title("nonzero x coefficients")
    ax_coef.grid(alpha=0.3)

    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
