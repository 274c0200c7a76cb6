"""Matplotlib rendering of report objects to image files.

Each render_* function takes a report produced by the library and writes one
figure; the CLI calls these when --figures is given, alongside the JSON/CSV
output. Rendering never feeds back into any computation.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "render_witnesses",
    "render_decay_profile",
    "render_sweep",
    "render_histogram",
    "render_nonmonic_scan",
]

_FIGSIZE = (6.0, 4.5)


def _save(fig, path) -> None:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _unit_circle(ax) -> None:
    t = np.linspace(0, 2 * math.pi, 256)
    ax.plot(np.cos(t), np.sin(t), "k--", lw=0.8, alpha=0.6)


def render_witnesses(report, path) -> None:
    """Scatter the singularity witnesses in the complex plane."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    zs = np.array([z for z, _ in report.witnesses])
    ax.scatter(zs.real, zs.imag, c="tab:red", marker="x", s=40, zorder=3)
    _unit_circle(ax)
    ax.axhline(0, color="gray", lw=0.5)
    ax.axvline(0, color="gray", lw=0.5)
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    ax.set_title(f"{report.count} singularity witnesses")
    ax.set_aspect("equal")
    _save(fig, path)


def render_decay_profile(profile, path) -> None:
    """Semilog singular-value tracks vs section size, with fitted rates."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    sizes = np.asarray(profile.sizes)
    for t in range(profile.sigma_tails.shape[1]):
        style = "-o" if profile.decaying[t] else "--s"
        label = f"track {t}, rate {profile.fitted_rates[t]:.3f}"
        if profile.decaying[t]:
            label += " (decaying)"
        ax.semilogy(sizes, np.maximum(profile.sigma_tails[:, t], 1e-300), style, label=label)
    ax.axhline(profile.noise_floor, color="gray", lw=0.8, ls=":", label="roundoff floor")
    ax.set_xlabel("section size N")
    ax.set_ylabel("singular value")
    ax.set_title(f"{profile.decaying_count} decaying track(s)")
    ax.legend(fontsize=8)
    _save(fig, path)


def render_sweep(sweep, path) -> None:
    """Index vs eps as a step plot, critical values marked."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    eps = np.asarray(sweep.eps_values)
    idx = [r.index_winding if r.fredholm else None for r in sweep.indices]
    good = [i for i, v in enumerate(idx) if v is not None]
    if good:
        ax.step([eps[i] for i in good], [idx[i] for i in good], where="post", marker=".")
    bad = [i for i, v in enumerate(idx) if v is None]
    if bad:
        ymin = min((idx[i] for i in good), default=0)
        ax.plot([eps[i] for i in bad], [ymin] * len(bad), "rx", label="non-Fredholm")
        ax.legend(fontsize=8)
    for c in sweep.critical_eps:
        if eps[0] <= c <= eps[-1]:
            ax.axvline(c, color="tab:orange", lw=0.8, ls="--")
    ax.set_xlabel("eps")
    ax.set_ylabel("Fredholm index")
    ax.set_title("index along the eps sweep")
    _save(fig, path)


def render_histogram(hist, path) -> None:
    """Bar chart of index occurrences, non-Fredholm draws shown separately."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    keys = sorted(hist.counts)
    ax.bar([str(k) for k in keys], [hist.counts[k] for k in keys], color="tab:blue")
    if hist.non_fredholm_count:
        ax.bar(["n/F"], [hist.non_fredholm_count], color="tab:gray")
    ax.set_xlabel("index")
    ax.set_ylabel("count")
    ax.set_title(f"index histogram over {hist.trials} draws")
    _save(fig, path)


def render_nonmonic_scan(scan, grid, path) -> None:
    """Grid points colored by |det(z a + I)|, detected singularities marked."""
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    zs = np.asarray([complex(z) for z in grid])
    mags = np.abs(np.asarray(scan.det_values))
    sc = ax.scatter(zs.real, zs.imag, c=np.log10(np.maximum(mags, 1e-300)), s=12, cmap="viridis")
    fig.colorbar(sc, ax=ax, label="log10 |det(z a + I)|")
    for s in scan.singularities:
        ax.plot(s.real, s.imag, "rx", ms=10, mew=2)
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    title = "pencil scan"
    if not scan.singularities:
        title += " (no singularity: nilpotent direction)"
    ax.set_title(title)
    ax.set_aspect("equal")
    _save(fig, path)
