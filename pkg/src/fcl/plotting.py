"""Optional SVG rendering of result tables (line plots and heatmaps only).

The CSV files are the contract; these plots are a convenience layer and
need matplotlib (install the 'plot' extra). Imports are deferred so the
package works without it.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ConfigError
from .table import ResultTable

# table name -> (kind, *column roles); kind "lines" plots every column
# against the first, kind "heatmap" pivots (x, y, z) triples onto a grid
_PLOT_SPECS = {
    "bands_epsilon": ("heatmap", "k", "J", "epsilon"),
    "winding-map_nu": ("heatmap", "J", "B", "nu"),
    "q0-map_q0mean": ("heatmap", "J", "B", "q0_mean"),
    "loschmidt_lambda": ("lines",),
    "loschmidt_q0": ("lines",),
    "walk_qs": ("lines",),
    "walk_mx": ("lines",),
    "walk_peres": ("lines",),
    "walk_parity": ("lines",),
    "walk_entropy_half": ("lines",),
    "walk_pdist": ("heatmap", "t", "x", "p"),
    "walk_mx_sites": ("heatmap", "t", "x", "mx"),
    "negativity-sweep_negativity": ("lines",),
}


def _pyplot():
    try:
        import matplotlib
    except ImportError:
        raise ConfigError("SVG rendering needs matplotlib (pip install 'fcl[plot]')")
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _pivot(table: ResultTable, xc: str, yc: str, zc: str):
    x = np.array(table.column(xc))
    y = np.array(table.column(yc))
    z = np.array(table.column(zc))
    xs, ys = np.unique(x), np.unique(y)
    grid = np.full((ys.size, xs.size), np.nan)
    xi = np.searchsorted(xs, x)
    yi = np.searchsorted(ys, y)
    grid[yi, xi] = z
    return xs, ys, grid


def render_table(table: ResultTable, out_dir: str | Path) -> Path | None:
    """Write <name>.svg beside the CSV; returns None for unplottable tables."""
    spec = _PLOT_SPECS.get(table.name)
    if spec is None or not table.rows:
        return None
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    if spec[0] == "lines":
        xcol = table.columns[0]
        x = table.column(xcol)
        for name in table.columns[1:]:
            ax.plot(x, table.column(name), lw=1.2, label=name)
        ax.set_xlabel(xcol)
        if len(table.columns) <= 9:
            ax.legend(fontsize=8)
    else:
        _, xc, yc, zc = spec
        xs, ys, grid = _pivot(table, xc, yc, zc)
        mesh = ax.pcolormesh(xs, ys, grid, shading="nearest")
        fig.colorbar(mesh, ax=ax, label=zc)
        ax.set_xlabel(xc)
        ax.set_ylabel(yc)
    ax.set_title(table.name)
    path = Path(out_dir) / f"{table.name}.svg"
    fig.savefig(path, metadata={"Date": None})
    plt.close(fig)
    return path
