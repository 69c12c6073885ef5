"""Matplotlib rendering of report data to image files, alongside the
CSV exports. Uses the Agg backend; nothing here opens a window."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .freq import FrequencyPoint
from .simulate import TimeSeries

MAX_PLOT_POINTS = 4000


def save_step_figure(
    series: list[tuple[str, TimeSeries]], path, title: str | None = None
) -> None:
    """Overlay step responses and write the figure to ``path``."""
    fig, ax = plt.subplots(figsize=(8, 5))
    for label, ts in series:
        stride = max(1, len(ts.t) // MAX_PLOT_POINTS)
        ax.plot(ts.t[::stride], ts.y[::stride], lw=1.5, label=label)
    ymin = min(float(np.min(ts.y)) for _, ts in series)
    ymax = max(float(np.max(ts.y)) for _, ts in series)
    if ymax - ymin > 10.0:
        # divergent runs swamp the interesting band; clip the view
        ax.set_ylim(-2.0, 4.0)
    ax.set_xlabel("time [s]")
    ax.set_ylabel("output")
    ax.grid(True)
    if title:
        ax.set_title(title)
    if len(series) > 1:
        ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_nyquist_figure(points: list[FrequencyPoint], path, title: str | None = None) -> None:
    """Polar-plane locus with its mirror image and the critical point."""
    re = np.array([p.re for p in points])
    im = np.array([p.im for p in points])
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.plot(re, im, lw=1.5, color="C0")
    ax.plot(re, -im, lw=1.0, ls="--", color="C0")
    ax.plot(-1.0, 0.0, "+", color="red", markersize=10, label="(-1, 0)")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.grid(True)
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
