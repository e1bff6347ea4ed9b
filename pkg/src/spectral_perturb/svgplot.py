"""Minimal SVG line/step plots, enough for count-versus-bound figures."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def _nice_ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    step = 10 ** math.floor(math.log10((hi - lo) / n))
    for m in (1, 2, 5, 10):
        if (hi - lo) / (m * step) <= n:
            step *= m
            break
    start = math.ceil(lo / step) * step
    return [start + k * step for k in range(int((hi - start) / step) + 1)]


def line_plot(series, title: str = "", xlabel: str = "s", ylabel: str = "", log_y: bool = False,
              y_max: float | None = None, width: int = 640, height: int = 420) -> str:
    """Render ``series`` as SVG text.

    ``series`` is a list of dicts with keys ``label``, ``x``, ``y`` and
    optionally ``step`` (draw a right-continuous step function).  With
    ``log_y`` nonpositive values are dropped.  ``y_max`` caps the vertical
    range; curves are clipped at the frame.
    """
    ml, mr, mt, mb = 64, 150, 36, 48
    pw, ph = width - ml - mr, height - mt - mb

    def tf(v):
        return math.log10(v) if log_y else v

    pts_all = [(x, tf(y)) for s in series for x, y in zip(s["x"], s["y"])
               if math.isfinite(y) and (y > 0 or not log_y)]
    if not pts_all:
        pts_all = [(0.0, 0.0), (1.0, 1.0)]
    xs = [p[0] for p in pts_all]
    ys = [p[1] for p in pts_all]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if y_max is not None and (y_max > 0 or not log_y):
        y1 = max(y0, min(y1, tf(y_max)))
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.05 * (y1 - y0)
    y0, y1 = (y0 - pad if log_y or y0 < 0 else 0.0), y1 + pad

    def px(x):
        return ml + (x - x0) / (x1 - x0) * pw

    def py(y):
        return mt + ph - (y - y0) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{ml + pw / 2:.1f}" y="20" text-anchor="middle" font-size="13">{escape(title)}</text>',
        f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _nice_ticks(x0, x1):
        out.append(f'<line x1="{px(t):.2f}" y1="{mt + ph}" x2="{px(t):.2f}" y2="{mt + ph + 4}" stroke="black"/>')
        out.append(f'<text x="{px(t):.2f}" y="{mt + ph + 16}" text-anchor="middle">{t:.3g}</text>')
    for t in _nice_ticks(y0, y1):
        lab = f"1e{t:.3g}" if log_y else f"{t:.3g}"
        out.append(f'<line x1="{ml - 4}" y1="{py(t):.2f}" x2="{ml}" y2="{py(t):.2f}" stroke="black"/>')
        out.append(f'<text x="{ml - 6}" y="{py(t) + 4:.2f}" text-anchor="end">{lab}</text>')
    out.append(f'<text x="{ml + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="14" y="{mt + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 14 {mt + ph / 2:.1f})">{escape(ylabel)}{" (log10)" if log_y else ""}</text>')
    out.append(f'<clipPath id="plotarea"><rect x="{ml}" y="{mt}" width="{pw}" height="{ph}"/></clipPath>')
    for k, s in enumerate(series):
        color = PALETTE[k % len(PALETTE)]
        pts = [(x, tf(y)) for x, y in zip(s["x"], s["y"]) if math.isfinite(y) and (y > 0 or not log_y)]
        if not pts:
            continue
        coords = []
        for i, (x, y) in enumerate(pts):
            if s.get("step") and i > 0:
                coords.append(f"{px(x):.2f},{py(pts[i - 1][1]):.2f}")
            coords.append(f"{px(x):.2f},{py(y):.2f}")
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.6" clip-path="url(#plotarea)" '
                   f'points="{" ".join(coords)}"/>')
        ly = mt + 14 + 16 * k
        out.append(f'<line x1="{ml + pw + 10}" y1="{ly - 4}" x2="{ml + pw + 30}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{ml + pw + 34}" y="{ly}">{escape(s["label"])}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
