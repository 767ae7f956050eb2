"""Bare-bones SVG line charts for eyeballing sweep results."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

_COLOURS = ("#1f4fbf", "#c0392b", "#27ae60", "#8e44ad")


def line_chart(x, series: dict, title: str = "", xlabel: str = "", width: int = 640, height: int = 400) -> str:
    """Render ``series`` (label -> y values) against ``x`` as an SVG document.

    Non-finite samples break the polyline instead of being drawn.
    """
    x = np.asarray(x, dtype=float)
    left, right, top, bottom = 60, 20, 30, 50
    pw, ph = width - left - right, height - top - bottom
    ys = [np.asarray(v, dtype=float) for v in series.values()]
    finite = np.concatenate([y[np.isfinite(y)] for y in ys]) if ys else np.array([0.0])
    ymin, ymax = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 1.0)
    if ymax - ymin < 1e-12:
        ymin, ymax = ymin - 0.5, ymax + 0.5
    xmin, xmax = float(x.min()), float(x.max())

    def sx(v):
        return left + (v - xmin) / (xmax - xmin) * pw

    def sy(v):
        return top + (ymax - v) / (ymax - ymin) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        f'<text x="{width / 2}" y="18" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<text x="{width / 2}" y="{height - 10}" text-anchor="middle" font-size="12">{escape(xlabel)}</text>',
    ]
    for frac in (0.0, 0.5, 1.0):
        xv = xmin + frac * (xmax - xmin)
        yv = ymin + frac * (ymax - ymin)
        out.append(f'<text x="{sx(xv):.1f}" y="{top + ph + 16}" text-anchor="middle" font-size="10">{xv:.3g}</text>')
        out.append(f'<text x="{left - 6}" y="{sy(yv) + 4:.1f}" text-anchor="end" font-size="10">{yv:.3g}</text>')

    for i, (label, y) in enumerate(zip(series, ys)):
        colour = _COLOURS[i % len(_COLOURS)]
        segment: list[str] = []
        segments = []
        for xv, yv in zip(x, y):
            if math.isfinite(yv):
                segment.append(f"{sx(xv):.2f},{sy(yv):.2f}")
            elif segment:
                segments.append(segment)
                segment = []
        if segment:
            segments.append(segment)
        for seg in segments:
            out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{" ".join(seg)}"/>')
        ly = top + 14 + 16 * i
        out.append(f'<line x1="{left + pw - 70}" y1="{ly - 4}" x2="{left + pw - 50}" y2="{ly - 4}" stroke="{colour}"/>')
        out.append(f'<text x="{left + pw - 45}" y="{ly}" font-size="11">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
