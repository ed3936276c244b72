"""Minimal SVG scatter plots. No plotting dependency; output is diffable text."""

from __future__ import annotations

import math
from typing import Sequence

_WIDTH = 640
_HEIGHT = 480
_MARGIN = 60


def _nice_range(values: Sequence[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        pad = 1.0 if lo == 0 else abs(lo) * 0.1
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def _clip_line(
    slope: float,
    intercept: float,
    x_lo: float,
    x_hi: float,
    y_lo: float,
    y_hi: float,
) -> tuple[tuple[float, float], tuple[float, float]] | None:
    """Segment of y = intercept + slope*x inside the plot rectangle, if any."""
    lo, hi = x_lo, x_hi
    if slope != 0.0:
        xa = (y_lo - intercept) / slope
        xb = (y_hi - intercept) / slope
        lo = max(lo, min(xa, xb))
        hi = min(hi, max(xa, xb))
    elif not y_lo <= intercept <= y_hi:
        return None
    if lo > hi:
        return None
    return (lo, intercept + slope * lo), (hi, intercept + slope * hi)


def scatter_svg(
    xs: Sequence[float],
    ys: Sequence[float],
    slope: float | None = None,
    intercept: float | None = None,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
) -> str:
    """Scatter plot with optional fitted line, as a standalone SVG document.

    Each data point is one <circle class="pt">; the fitted line, when
    given finite coefficients, is one <line class="fit">.
    """
    if len(xs) != len(ys):
        raise ValueError("xs and ys must have equal length")
    if not xs:
        raise ValueError("nothing to plot")
    x_lo, x_hi = _nice_range(xs)
    y_lo, y_hi = _nice_range(ys)
    plot_w = _WIDTH - 2 * _MARGIN
    plot_h = _HEIGHT - 2 * _MARGIN

    def px(x: float) -> float:
        return _MARGIN + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return _HEIGHT - _MARGIN - (y - y_lo) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.0f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
    ]
    # axes
    parts.append(
        f'<line class="axis" x1="{_MARGIN}" y1="{_HEIGHT - _MARGIN}" '
        f'x2="{_WIDTH - _MARGIN}" y2="{_HEIGHT - _MARGIN}" stroke="black"/>'
    )
    parts.append(
        f'<line class="axis" x1="{_MARGIN}" y1="{_MARGIN}" '
        f'x2="{_MARGIN}" y2="{_HEIGHT - _MARGIN}" stroke="black"/>'
    )
    for i in range(5):
        fx = x_lo + (x_hi - x_lo) * i / 4
        fy = y_lo + (y_hi - y_lo) * i / 4
        parts.append(
            f'<text x="{px(fx):.1f}" y="{_HEIGHT - _MARGIN + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{fx:.3g}</text>'
        )
        parts.append(
            f'<text x="{_MARGIN - 8}" y="{py(fy):.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{fy:.3g}</text>'
        )
    parts.append(
        f'<text x="{_WIDTH / 2:.0f}" y="{_HEIGHT - 14}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{xlabel}</text>'
    )
    parts.append(
        f'<text x="18" y="{_HEIGHT / 2:.0f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {_HEIGHT / 2:.0f})">{ylabel}</text>'
    )
    if slope is not None and intercept is not None and math.isfinite(slope):
        seg = _clip_line(slope, intercept, x_lo, x_hi, y_lo, y_hi)
        if seg is not None:
            (xa, ya), (xb, yb) = seg
            parts.append(
                f'<line class="fit" x1="{px(xa):.1f}" y1="{py(ya):.1f}" '
                f'x2="{px(xb):.1f}" y2="{py(yb):.1f}" '
                f'stroke="#c03030" stroke-width="1.5"/>'
            )
    for x, y in zip(xs, ys):
        parts.append(
            f'<circle class="pt" cx="{px(x):.1f}" cy="{py(y):.1f}" r="3.5" '
            f'fill="#1f4e9c" fill-opacity="0.8"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
