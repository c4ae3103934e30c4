"""Matplotlib rendering of cone sections and instability windows.

The exact core never touches floats; conversion happens only here, at
the plotting boundary.  Figures are rendered headlessly to files next
to the delimited output.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.colors import ListedColormap

from .polysign import OpenInterval, endpoint_inf, endpoint_sup
from .positivity import ConeCell, ConeRay

_MEMBERSHIP_LEVEL = {"0": 0, "unknown": 1, "1": 2}
_CONE_COLORS = ListedColormap(["#f4dcd6", "#d9d9d9", "#cde3c9"])


def render_cone(
    rays: Sequence[ConeRay],
    cells: Sequence[ConeCell],
    path: str,
    title: str = "ample cone section",
) -> None:
    """Membership raster plus the two boundary rays in the (f, delta') plane."""
    xs = sorted({float(c.f_coeff) for c in cells})
    ys = sorted({float(c.delta_coeff) for c in cells})
    index_x = {v: i for i, v in enumerate(xs)}
    index_y = {v: i for i, v in enumerate(ys)}
    grid = [[1] * len(xs) for _ in ys]
    for cell in cells:
        grid[index_y[float(cell.delta_coeff)]][index_x[float(cell.f_coeff)]] = (
            _MEMBERSHIP_LEVEL[cell.membership]
        )

    fig, ax = plt.subplots(figsize=(6, 5))
    ax.imshow(
        grid,
        origin="lower",
        extent=(min(xs), max(xs), min(ys), max(ys)),
        aspect="auto",
        cmap=_CONE_COLORS,
        vmin=0,
        vmax=2,
        interpolation="nearest",
    )
    top = max(ys)
    right = max(xs)
    for ray in rays:
        if ray.family == "s_family":
            q = float(ray.threshold_lo)
            y_end = min(top, right / q if q else top)
            ax.plot([0, q * y_end], [0, y_end], "k-", lw=2, label=f"x = {ray.threshold_lo} y")
        else:
            lo = float(ray.threshold_lo)
            y_end = min(top, right / lo if lo else top)
            style = "k-" if ray.threshold_hi is not None and ray.threshold_hi == ray.threshold_lo else "k--"
            ax.plot([0, lo * y_end], [0, -y_end], style, lw=2, label=f"x = {ray.threshold_lo} (-y)")
            if ray.threshold_hi is not None and ray.threshold_hi != ray.threshold_lo:
                hi = float(ray.threshold_hi)
                y_end2 = min(top, right / hi if hi else top)
                ax.plot([0, hi * y_end2], [0, -y_end2], "k--", lw=2)
    ax.axhline(0, color="0.6", lw=0.5)
    ax.set_xlabel("coefficient of f")
    ax.set_ylabel("coefficient of delta'")
    ax.set_title(title)
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _interval_float_bounds(iv: OpenInterval, default_hi: float) -> tuple[float, float]:
    lo = float(endpoint_sup(iv.lo))
    hi = default_hi if iv.hi is None else float(endpoint_inf(iv.hi))
    return lo, hi


def render_window(
    window_intervals: Sequence[OpenInterval],
    x_lo: Fraction,
    x_hi: Fraction,
    curves: Sequence[tuple[str, Callable[[Fraction], Optional[Fraction]]]],
    path: str,
    xlabel: str,
    title: str,
    n_samples: int = 400,
) -> None:
    """Slope curves over [x_lo, x_hi] with the instability window shaded."""
    fig, ax = plt.subplots(figsize=(6, 4))
    span = x_hi - x_lo
    xs = [x_lo + span * i / n_samples for i in range(n_samples + 1)]
    for label, fn in curves:
        px, py = [], []
        for x in xs:
            y = fn(x)
            if y is None:
                continue
            px.append(float(x))
            py.append(float(y))
        ax.plot(px, py, lw=1.5, label=label)
    for iv in window_intervals:
        lo, hi = _interval_float_bounds(iv, float(x_hi))
        ax.axvspan(lo, hi, color="#cde3c9", alpha=0.8, zorder=0)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("slope")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
