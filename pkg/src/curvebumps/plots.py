"""Figure rendering for support-set samples (written to files, never shown)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sampling import BUMP, CURVE, OUTSIDE

_STYLE = {
    CURVE: dict(color="tab:blue", s=8, label="curve"),
    BUMP: dict(color="tab:orange", s=14, label="bump"),
    OUTSIDE: dict(color="0.8", s=4, label="outside"),
}


def plot_support_points(points, path, title=None):
    """Scatter plot of labeled (point, label) pairs, saved to ``path``.

    Only 2-D points are plottable; higher dimensions raise.
    """
    fig, ax = plt.subplots(figsize=(6, 6))
    for label in (OUTSIDE, BUMP, CURVE):
        xs = [p[0] for p, lab in points if lab == label]
        ys = [p[1] for p, lab in points if lab == label]
        if xs and len(points[0][0]) != 2:
            raise ValueError("can only plot 2-D support points")
        if xs:
            ax.scatter(xs, ys, **_STYLE[label])
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
