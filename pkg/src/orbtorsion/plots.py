"""Figure rendering for the report path.

Every report quantity is written twice: a matplotlib PNG next to the CSV
for immediate inspection, and a small gnuplot script that reproduces the
same picture from the CSV alone.  The computational modules never import
anything from here, so the exact core stays free of graphics dependencies.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def _new_axes(title: str, xlabel: str, ylabel: str):
    fig, ax = plt.subplots(figsize=(7.0, 4.5), dpi=130)
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    return fig, ax


def render_pseudo_figure(
    png_path: str | Path,
    ms: Sequence[int],
    values: Sequence[float],
    q: int,
    residue_degrees: Sequence[int],
) -> None:
    """Elliptic Mellin values against the shift, coloured by residue class."""
    fig, ax = _new_axes("elliptic Mellin value along the ray", "m", "Re value")
    for r in range(q):
        xs = [m for m in ms if m % q == r]
        ys = [values[i] for i, m in enumerate(ms) if m % q == r]
        ax.plot(xs, ys, marker="o", markersize=3.5, linewidth=1.0,
                label=f"m = {r} mod {q} (deg {residue_degrees[r]})")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path)
    plt.close(fig)


def render_cone_figure(
    png_path: str | Path,
    eps: Sequence[float],
    tails: Sequence[float],
    slope: float,
) -> None:
    """Log-log tail growth with the fitted power law overlaid."""
    fig, ax = _new_axes("regularised cone tail integral", "eps", "tail")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.plot(eps, tails, marker="o", markersize=4, linewidth=0, label="tail")
    anchor = tails[-1]
    fitted = [anchor * (e / eps[-1]) ** slope for e in eps]
    ax.plot(eps, fitted, linewidth=1.0, linestyle="--",
            label=f"fit slope {slope:.4f}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path)
    plt.close(fig)


def render_growth_figure(
    png_path: str | Path,
    ms: Sequence[int],
    normalized: Sequence[float],
    title: str,
) -> None:
    fig, ax = _new_axes(title, "m", "normalised magnitude")
    ax.plot(ms, normalized, marker="o", markersize=3, linewidth=1.0)
    fig.tight_layout()
    fig.savefig(png_path)
    plt.close(fig)


def gnuplot_script_series(csv_name: str, title: str, ycol: int = 2, logscale: bool = False) -> str:
    lines = [
        "set datafile separator ','",
        f"set title '{title}'",
        "set key left top",
    ]
    if logscale:
        lines.append("set logscale xy")
    lines.append(f"plot '{csv_name}' using 1:{ycol} skip 1 with linespoints title '{title}'")
    return "\n".join(lines) + "\n"


def write_gnuplot_script(path: str | Path, csv_name: str, title: str, ycol: int = 2,
                         logscale: bool = False) -> None:
    Path(path).write_text(gnuplot_script_series(csv_name, title, ycol, logscale), encoding="utf-8")
