"""Minimal standalone SVG rendering for density-vs-histogram plots.

Output is SVG 1.1, sized in px, with no external resources: one blue
histogram polygon (fill-opacity 0.5) under one red density polyline, plus
axis lines, ticks and numeric labels.  Everything is plain line/polygon/text
elements except the density curve, which is the single ``<path>`` element.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["freedman_diaconis_bins", "render_density_plot"]

_WIDTH, _HEIGHT = 640, 440
_LEFT, _RIGHT, _TOP, _BOTTOM = 70, 20, 20, 50
_PLOT_W = _WIDTH - _LEFT - _RIGHT
_PLOT_H = _HEIGHT - _TOP - _BOTTOM
_TICKS = 6


def freedman_diaconis_bins(values: np.ndarray, span: tuple[float, float],
                           floor: int = 20, cap: int = 400) -> int:
    """Freedman-Diaconis bin count over ``span`` with a floor and a cap."""
    values = np.asarray(values, dtype=float)
    lo, hi = span
    if not hi > lo:
        raise ValueError(f"empty plotting range {span}")
    q75, q25 = np.percentile(values, [75.0, 25.0])
    iqr = q75 - q25
    if iqr <= 0.0 or values.size < 2:
        return floor
    width = 2.0 * iqr / values.size ** (1.0 / 3.0)
    return max(floor, min(cap, math.ceil((hi - lo) / width)))


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _tick_values(lo: float, hi: float, count: int = _TICKS) -> np.ndarray:
    """Round tick positions: a 1/2/5 ladder step covering [lo, hi]."""
    raw = (hi - lo) / max(count - 1, 1)
    power = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = mult * power
        if step >= raw * 0.999:
            break
    first = math.ceil(lo / step - 1e-9) * step
    ticks = np.arange(first, hi + 0.5 * step, step)
    return ticks[(ticks >= lo - 1e-9 * step) & (ticks <= hi + 1e-9 * step)]


def render_density_plot(title: str, curve_x: np.ndarray, curve_y: np.ndarray,
                        samples: np.ndarray, x_range: tuple[float, float],
                        bins: int) -> str:
    """Compose the SVG document and return it as text."""
    if bins < 5:
        raise ValueError(f"need at least 5 bins, got {bins}")
    lo, hi = (float(v) for v in x_range)
    if not hi > lo:
        raise ValueError(f"empty plotting range {x_range}")
    samples = np.asarray(samples, dtype=float)
    counts, edges = np.histogram(samples, bins=bins, range=(lo, hi))
    heights = counts / (samples.size * np.diff(edges))

    curve_x = np.asarray(curve_x, dtype=float)
    curve_y = np.asarray(curve_y, dtype=float)
    finite = np.isfinite(curve_y)
    hist_max = float(heights.max()) if heights.size else 0.0
    if finite.any():
        curve_finite_max = float(curve_y[finite].max())
        typical = float(np.median(curve_y[finite]))
    else:
        curve_finite_max = typical = 0.0
    # Unbounded densities would squash everything else: let the curve leave
    # the frame once it exceeds a few times the bulk scale.
    ceiling = 4.0 * max(hist_max, typical)
    y_max = 1.08 * max(hist_max, min(curve_finite_max,
                                     ceiling if ceiling > 0.0 else curve_finite_max))
    if y_max <= 0.0:
        y_max = 1.0

    def sx(v: float) -> float:
        return _LEFT + (v - lo) / (hi - lo) * _PLOT_W

    def sy(v: float) -> float:
        return _TOP + (1.0 - min(v, y_max) / y_max) * _PLOT_H

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH}px" height="{_HEIGHT}px" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_LEFT + _PLOT_W / 2:.1f}" y="14" font-family="sans-serif" '
        f'font-size="13" text-anchor="middle">{title}</text>',
    ]

    # histogram: one closed step polygon
    if heights.size:
        pts = [f"{sx(edges[0]):.2f},{sy(0.0):.2f}"]
        for i, h in enumerate(heights):
            pts.append(f"{sx(edges[i]):.2f},{sy(h):.2f}")
            pts.append(f"{sx(edges[i + 1]):.2f},{sy(h):.2f}")
        pts.append(f"{sx(edges[-1]):.2f},{sy(0.0):.2f}")
        parts.append('<g class="histogram">')
        parts.append(f'<polygon points="{" ".join(pts)}" fill="blue" '
                     f'fill-opacity="0.5" stroke="none"/>')
        parts.append('</g>')

    # axes as line elements so the density curve stays the only <path>
    x0, y0 = _LEFT, _TOP + _PLOT_H
    parts.append(f'<line x1="{x0}" y1="{y0}" x2="{x0 + _PLOT_W}" y2="{y0}" '
                 f'stroke="black" stroke-width="1"/>')
    parts.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{_TOP}" '
                 f'stroke="black" stroke-width="1"/>')
    for tick in _tick_values(lo, hi):
        px = sx(float(tick))
        parts.append(f'<line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" y2="{y0 + 5}" '
                     f'stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{px:.2f}" y="{y0 + 20}" font-family="sans-serif" '
                     f'font-size="12" text-anchor="middle">{_fmt(float(tick))}</text>')
    for tick in _tick_values(0.0, y_max):
        py = sy(float(tick))
        parts.append(f'<line x1="{x0 - 5}" y1="{py:.2f}" x2="{x0}" y2="{py:.2f}" '
                     f'stroke="black" stroke-width="1"/>')
        parts.append(f'<text x="{x0 - 9}" y="{py + 4:.2f}" font-family="sans-serif" '
                     f'font-size="12" text-anchor="end">{_fmt(float(tick))}</text>')

    # the density curve: the single path, clamped at the frame top
    coords = [f"{sx(float(x)):.2f},{sy(float(y) if math.isfinite(y) else y_max):.2f}"
              for x, y in zip(curve_x, curve_y)]
    if coords:
        path = "M " + coords[0] + " L " + " L ".join(coords[1:])
        parts.append(f'<path d="{path}" fill="none" stroke="red" stroke-width="1.5"/>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
