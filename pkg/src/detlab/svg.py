"""Minimal log-log scatter plot as a standalone SVG document."""

from __future__ import annotations

import math
from html import escape
from typing import Sequence

WIDTH, HEIGHT = 800, 600
MARGIN = 70


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * k / (n - 1) for k in range(n)]


def loglog_svg(ns: Sequence[int], counts: Sequence[int], slope: float | None = None,
               intercept: float | None = None, title: str = "") -> str:
    """Scatter of (ln N, ln count) with an optional fitted line."""
    pts = [(math.log(n), math.log(c)) for n, c in zip(ns, counts) if n > 0 and c > 0]
    if not pts:
        raise ValueError("nothing to plot: need positive N and counts")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if slope is not None:
        ys_line = [slope * x + intercept for x in (x0, x1)]
        y0, y1 = min(y0, *ys_line), max(y1, *ys_line)
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    if y1 == y0:
        y0, y1 = y0 - 1, y1 + 1

    def sx(x):
        return MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2 * MARGIN)

    def sy(y):
        return HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2 * MARGIN)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" '
        f'y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<text x="{sx(t):.2f}" y="{HEIGHT - MARGIN + 20}" font-size="12" '
                   f'text-anchor="middle">{t:.2f}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<text x="{MARGIN - 8}" y="{sy(t) + 4:.2f}" font-size="12" '
                   f'text-anchor="end">{t:.2f}</text>')
    out.append(f'<text x="{WIDTH / 2}" y="{HEIGHT - 20}" font-size="14" '
               f'text-anchor="middle">ln N</text>')
    out.append(f'<text x="20" y="{HEIGHT / 2}" font-size="14" text-anchor="middle" '
               f'transform="rotate(-90 20 {HEIGHT / 2})">ln count</text>')
    if title:
        out.append(f'<text x="{WIDTH / 2}" y="30" font-size="16" '
                   f'text-anchor="middle">{escape(title)}</text>')
    if slope is not None:
        out.append(f'<line x1="{sx(x0):.2f}" y1="{sy(slope * x0 + intercept):.2f}" '
                   f'x2="{sx(x1):.2f}" y2="{sy(slope * x1 + intercept):.2f}" '
                   f'stroke="crimson" stroke-width="2"/>')
        out.append(f'<text x="{WIDTH - MARGIN}" y="{MARGIN}" font-size="14" '
                   f'text-anchor="end" fill="crimson">slope {slope:.4f}</text>')
    for x, y in pts:
        out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="4" fill="steelblue"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
