"""Static matplotlib renderings of sweeps and phase diagrams."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .entanglement import max_entropies  # noqa: E402

ENTROPY_STYLE = {
    "S_site": ("$S(\\rho_{A1C1})$", "-"),
    "S_atom": ("$S(\\rho_{A1})$", "--"),
    "S_cavity": ("$S(\\rho_{C1})$", "-."),
    "S_atoms": ("$S(\\rho_{A1A2})$", ":"),
    "S_cross": ("$S(\\rho_{A1C2})$", (0, (5, 1, 1, 1))),
}

RC = {
    "font.size": 9,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "lines.linewidth": 1.2,
    "figure.dpi": 150,
    "savefig.bbox": "tight",
}


def entropy_figure(rows, path, show_bounds: bool = True) -> Path:
    """Five bipartite entropies against delta/g for a fixed-hopping sweep."""
    rows = sorted(rows, key=lambda r: (r.hop_over_g, r.delta_over_g))
    hops = sorted({r.hop_over_g for r in rows})
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(4.5, 3.2))
        for hop in hops:
            sel = [r for r in rows if r.hop_over_g == hop]
            x = np.array([r.delta_over_g for r in sel])
            for name, (label, ls) in ENTROPY_STYLE.items():
                y = np.array([getattr(r, name) for r in sel])
                ax.plot(x, y, linestyle=ls, label=label if hop == hops[0] else None)
        if show_bounds:
            smax = max_entropies()
            for value in sorted(set(smax.values())):
                ax.axhline(value, color="0.8", lw=0.6, zorder=0)
        ax.set_xlabel(r"$\Delta / g$")
        ax.set_ylabel("entropy (bits)")
        ax.set_ylim(bottom=0)
        if len(hops) == 1:
            ax.set_title(f"$A = {hops[0]:g}\\,g$")
        ax.legend(loc="best", frameon=False)
        fig.savefig(path)
        plt.close(fig)
    return Path(path)


def phase_figure(diagram, path) -> Path:
    """Order-parameter map with half-maximum boundaries and region labels."""
    from .emit import REGION_LABELS

    var_total = diagram.grid("var_n1")
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(4.8, 3.6))
        mesh = ax.pcolormesh(diagram.deltas, diagram.hops, var_total,
                             shading="nearest", cmap="Blues")
        fig.colorbar(mesh, ax=ax, label=r"var$(\hat n_1)$")
        colors = {"superfluid": "k", "polaritonic": "tab:red"}
        for name, segments in diagram.boundaries.items():
            for k, seg in enumerate(segments):
                ax.plot(seg[:, 0], seg[:, 1], color=colors.get(name, "k"),
                        label=f"{name} boundary" if k == 0 else None)
        for text, d, a in REGION_LABELS:
            if diagram.deltas[0] <= d <= diagram.deltas[-1] and diagram.hops[0] <= a <= diagram.hops[-1]:
                ax.text(d, a, text, ha="center", va="center", fontsize=7)
        if diagram.hops[0] > 0 and diagram.hops[-1] / diagram.hops[0] > 50:
            ax.set_yscale("log")
        ax.set_xlabel(r"$\Delta / g$")
        ax.set_ylabel(r"$A / g$")
        ax.legend(loc="center left", frameon=False, fontsize=7)
        fig.savefig(path)
        plt.close(fig)
    return Path(path)
