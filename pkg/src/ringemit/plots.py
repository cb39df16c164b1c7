"""Figure rendering for the command-line report path.

Figures are written next to the delimited output; the Agg backend keeps
this usable on headless machines.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_simulation(records, phi_count: int, path: str) -> None:
    """Render a phase sweep as a heat map, or a single-phase run as curves."""
    if phi_count > 0:
        times = np.array(sorted({r.t for r in records}))
        phis = np.array([r.phi for r in records[:phi_count]])
        grid = np.array([r.p for r in records]).reshape(times.size, phi_count)
        fig, ax = plt.subplots(figsize=(7.0, 4.2))
        mesh = ax.pcolormesh(times, phis, grid.T, shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label="emission probability")
        ax.set_xlabel("time")
        ax.set_ylabel("phase")
    else:
        times = np.array([r.t for r in records])
        fig, ax = plt.subplots(figsize=(7.0, 4.2))
        ax.plot(times, [r.p for r in records], label="p", lw=1.5)
        sites = len(records[0].p_cond)
        for j in range(sites):
            ax.plot(times, [r.p_cond[j] for r in records], lw=0.8, alpha=0.7,
                    label=f"site {j + 1}")
        ax.set_xlabel("time")
        ax.set_ylabel("probability")
        ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_decomposition(fits, path: str) -> None:
    """Render the fitted interference coefficients against time."""
    times = np.array([f.t for f in fits])
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    ax.plot(times, [f.a for f in fits], color="black", lw=1.0, label="A")
    ax.plot(times, [f.b for f in fits], color="red", lw=1.0, label="B")
    ax.plot(times, [f.c for f in fits], color="blue", lw=1.0, label="C")
    ax.plot(times, [f.s for f in fits], color="green", lw=1.0, ls="--", label="S")
    ax.set_xlabel("time")
    ax.set_ylabel("coefficient")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
