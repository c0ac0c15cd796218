"""Minimal self-contained SVG polyline plots (no plotting dependency)."""

from __future__ import annotations

import math
from typing import List, Sequence, Tuple

WIDTH, HEIGHT = 640, 480
MARGIN = 60
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _ticks(lo: float, hi: float, n: int = 6) -> List[float]:
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def _fmt(v: float) -> str:
    return f"{v:.4g}"


def line_plot(series: Sequence[Tuple[str, Sequence[float], Sequence[float]]],
              xlabel: str, ylabel: str, title: str,
              logx: bool = False, logy: bool = False) -> str:
    """Render named (x, y) series as an SVG document string."""
    def tx(v):
        return math.log10(v) if logx else v

    def ty(v):
        return math.log10(v) if logy else v

    xs = [tx(x) for _, sx, _ in series for x in sx]
    ys = [ty(y) for _, _, sy in series for y in sy]
    xlo, xhi = min(xs), max(xs)
    ylo, yhi = min(ys), max(ys)
    if xhi - xlo < 1e-12:
        xlo, xhi = xlo - 0.5, xhi + 0.5
    if yhi - ylo < 1e-12:
        ylo, yhi = ylo - 0.5, yhi + 0.5

    def px(v):
        return MARGIN + (tx(v) - xlo) / (xhi - xlo) * (WIDTH - 2 * MARGIN)

    def py(v):
        return HEIGHT - MARGIN - (ty(v) - ylo) / (yhi - ylo) * (HEIGHT - 2 * MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH/2:.1f}" y="24" text-anchor="middle" '
        f'font-size="16">{title}</text>',
    ]
    # Axes.
    parts.append(f'<line x1="{MARGIN}" y1="{HEIGHT-MARGIN}" x2="{WIDTH-MARGIN}" '
                 f'y2="{HEIGHT-MARGIN}" stroke="black"/>')
    parts.append(f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" '
                 f'y2="{HEIGHT-MARGIN}" stroke="black"/>')
    for t in _ticks(xlo, xhi):
        x = MARGIN + (t - xlo) / (xhi - xlo) * (WIDTH - 2 * MARGIN)
        label = _fmt(10 ** t) if logx else _fmt(t)
        parts.append(f'<line x1="{x:.1f}" y1="{HEIGHT-MARGIN}" x2="{x:.1f}" '
                     f'y2="{HEIGHT-MARGIN+5}" stroke="black"/>')
        parts.append(f'<text x="{x:.1f}" y="{HEIGHT-MARGIN+20}" '
                     f'text-anchor="middle" font-size="11">{label}</text>')
    for t in _ticks(ylo, yhi):
        y = HEIGHT - MARGIN - (t - ylo) / (yhi - ylo) * (HEIGHT - 2 * MARGIN)
        label = _fmt(10 ** t) if logy else _fmt(t)
        parts.append(f'<line x1="{MARGIN-5}" y1="{y:.1f}" x2="{MARGIN}" '
                     f'y2="{y:.1f}" stroke="black"/>')
        parts.append(f'<text x="{MARGIN-8}" y="{y+4:.1f}" text-anchor="end" '
                     f'font-size="11">{label}</text>')
    parts.append(f'<text x="{WIDTH/2:.1f}" y="{HEIGHT-12}" '
                 f'text-anchor="middle" font-size="13">{xlabel}</text>')
    parts.append(f'<text x="16" y="{HEIGHT/2:.1f}" text-anchor="middle" '
                 f'font-size="13" transform="rotate(-90 16 {HEIGHT/2:.1f})">'
                 f'{ylabel}</text>')
    # Series polylines + legend.
    for i, (name, sx, sy) in enumerate(series):
        color = COLORS[i % len(COLORS)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(sx, sy))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" '
                     f'stroke-width="1.5"/>')
        ly = MARGIN + 16 * i
        parts.append(f'<line x1="{WIDTH-MARGIN-110}" y1="{ly}" '
                     f'x2="{WIDTH-MARGIN-90}" y2="{ly}" stroke="{color}" '
                     f'stroke-width="1.5"/>')
        parts.append(f'<text x="{WIDTH-MARGIN-84}" y="{ly+4}" '
                     f'font-size="11">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
