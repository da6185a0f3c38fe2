# path: dunkl/plots.py
"""SVG renderings of sampled functions and oscillation tables."""
import os
from typing import List, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .bmo import BmoReport  # noqa: E402
from .grid import GridFunction  # noqa: E402

# fixed ids and no date so identical figures give identical files
matplotlib.rcParams["svg.hashsalt"] = "dunkl-probe"
matplotlib.rcParams["svg.fonttype"] = "none"


def _save(fig, path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    tmp_path = path + ".tmp"
    fig.savefig(tmp_path, format="svg", metadata={"Date": None})
    plt.close(fig)
    os.replace(tmp_path, path)
    return path


def plot_function(f: GridFunction, path: str, title: str = "", marks: Optional[List[List[float]]] = None) -> str:
    """Graph of re/im in rank one, |f| as an image in the plane."""
    fig, ax = plt.subplots(figsize=(6, 4))
    if f.grid.dimension == 1:
        x = f.grid.axis
        ax.plot(x, f.samples.real, label="re", linewidth=1.0)
        if np.any(f.samples.imag):
            ax.plot(x, f.samples.imag, label="im", linewidth=1.0)
        for m in marks or []:
            ax.axvline(m[0], color="grey", linestyle=":", linewidth=0.8)
        ax.set_xlabel("x")
        ax.legend()
    elif f.grid.dimension == 2:
        L = f.grid.half_width
        im = ax.imshow(np.abs(f.samples).T, origin="lower", extent=(-L, L, -L, L), cmap="viridis")
        fig.colorbar(im, ax=ax)
        for m in marks or []:
            ax.plot(m[0], m[1], "r+")
    else:
        plt.close(fig)
        raise ValueError("plots are drawn for one or two dimensions")
    ax.set_title(title)
    return _save(fig, path)


def plot_oscillations(report: BmoReport, path: str) -> str:
    """Oscillation per (first center coordinate, radius) as a table of rectangles."""
    xs = sorted({float(x[0]) for x, _, _ in report.oscillations})
    rs = sorted({float(r) for _, r, _ in report.oscillations})
    table = np.zeros((len(rs), len(xs)))
    for x, r, v in report.oscillations:
        i, j = rs.index(float(r)), xs.index(float(x[0]))
        table[i, j] = max(table[i, j], v)
    fig, ax = plt.subplots(figsize=(6, 3))
    mesh = ax.pcolormesh(np.arange(len(xs) + 1), np.arange(len(rs) + 1), table, cmap="magma", shading="flat")
    ax.set_xticks(np.arange(len(xs)) + 0.5)
    ax.set_xticklabels([f"{x:.2g}" for x in xs], rotation=90, fontsize=7)
    ax.set_yticks(np.arange(len(rs)) + 0.5)
    ax.set_yticklabels([f"{r:.3g}" for r in rs], fontsize=7)
    ax.set_xlabel("center x_1")
    ax.set_ylabel("radius")
    ax.set_title(f"{report.function_id}: sampled mean oscillation")
    fig.colorbar(mesh, ax=ax)
    fig.tight_layout()
    return _save(fig, path)
