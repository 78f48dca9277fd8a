"""Figures for a report: rank trace of the syzygy lattice and the arrow matrix."""

from __future__ import annotations

from pathlib import Path
from typing import List

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from itq.report import Report  # noqa: E402


def rank_trace_figure(rep: Report, path: Path) -> Path:
    trace = rep.profile["rank_trace"]
    fig, ax = plt.subplots(figsize=(4.5, 3))
    ax.step(range(len(trace)), trace, where="post", marker="o")
    phi = rep.profile["phi_A0"]
    ax.axvline(phi, color="grey", linestyle="--", linewidth=1)
    ax.annotate(f"phi(A0) = {phi}", (phi, max(trace)), xytext=(4, -12), textcoords="offset points")
    ax.set_xlabel("syzygy step l")
    ax.set_ylabel("rank of W_l")
    ax.set_xticks(range(len(trace)))
    ax.set_ylim(bottom=0)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def matrix_figure(rep: Report, path: Path) -> Path:
    m = rep.quiver["matrix"]
    labels = rep.quiver["labels"]
    fig, ax = plt.subplots(figsize=(1.2 + 0.45 * len(m), 1 + 0.45 * len(m)))
    ax.imshow(m, cmap="Greys")
    heart = set(rep.profile["heart"])
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x:
                ax.text(j, i, str(x), ha="center", va="center", color="tab:red")
    ax.set_xticks(range(len(m)), labels)
    ax.set_yticks(range(len(m)), labels)
    for tick in ax.get_xticklabels() + ax.get_yticklabels():
        if tick.get_text() in heart:
            tick.set_fontweight("bold")
    ax.set_title("arrows i -> j (heart in bold)", fontsize=9)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def write_figures(rep: Report, directory: Path, stem: str = "quiver") -> List[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    return [
        rank_trace_figure(rep, directory / f"{stem}_rank_trace.png"),
        matrix_figure(rep, directory / f"{stem}_matrix.png"),
    ]
