"""Deterministic SVG drawings of tilings and curve approximations.

Exact coordinates become decimals only here, printed with 12 significant
digits; nothing drawn is used as evidence for anything.
"""
from __future__ import annotations

from dataclasses import dataclass

from .curves import CurveRule, expand, polyline
from .tiling import Tiling


@dataclass(frozen=True)
class RenderOptions:
    width_px: int = 480
    margin_px: int = 12
    stroke: str = "#1f1f1f"
    stroke_width: float = 1.0
    fill: str = "#f3efe4"
    curve_stroke: str = "#b0302a"
    curve_width: float = 1.5
    show_order_curve: bool = True
    show_R_glyphs: bool = False
    depth: int = 3

    def __post_init__(self):
        if self.width_px <= 0:
            raise ValueError("width_px must be positive")


def num(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s == "-0" else s


class _Frame:
    """Maps scene coordinates to pixels with the y axis pointing up."""

    def __init__(self, master, opts: RenderOptions):
        xs = [float(p.x) for p in master]
        ys = [float(p.y) for p in master]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, max(ys) - min(ys)) or 1.0
        inner = opts.width_px - 2 * opts.margin_px
        self.k = inner / span
        self.m = opts.margin_px
        self.width = opts.width_px
        self.height = round((max(ys) - min(ys)) * self.k + 2 * opts.margin_px)

    def xy(self, x: float, y: float) -> tuple[float, float]:
        return (self.m + (x - self.x0) * self.k, self.m + (self.y1 - y) * self.k)

    def __call__(self, p) -> tuple[float, float]:
        return self.xy(float(p.x), float(p.y))

    def pts(self, ps) -> str:
        return " ".join(f"{num(x)},{num(y)}" for x, y in map(self, ps))


def _header(frame: _Frame) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{frame.width}" '
        f'height="{frame.height}" viewBox="0 0 {frame.width} {frame.height}">',
    ]


def _tiles(frame, tiles, opts) -> list[str]:
    out = [f'<g class="tiles" fill="{opts.fill}" stroke="{opts.stroke}" stroke-width="{num(opts.stroke_width)}" stroke-linejoin="round">']
    for tile in tiles:
        out.append(f'<polygon points="{frame.pts(tile)}"/>')
    out.append("</g>")
    return out


def render_tiling(t: Tiling, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    frame = _Frame(t.master, opts)
    lines = _header(frame)
    lines += _tiles(frame, t.tiles, opts)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _arrow_defs(opts) -> list[str]:
    return [
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto">',
        f'<path d="M0,0 L10,5 L0,10 z" fill="{opts.curve_stroke}"/>',
        "</marker>",
        "</defs>",
    ]


def _glyphs(frame, rule: CurveRule) -> list[str]:
    """An R in the master and its image in every child, overlined when reversed."""
    xs = [float(p.x) for p in rule.master]
    ys = [float(p.y) for p in rule.master]
    cx, cy = sum(xs) / 3, sum(ys) / 3
    size = 0.18 * min(max(xs) - min(xs), max(ys) - min(ys))
    out = ['<g class="glyphs" font-family="sans-serif" font-weight="bold" fill="#2a4d8f">']
    for ch in rule.children:
        m = ch.map
        a, b, c, d = float(m.m00), float(m.m01), float(m.m10), float(m.m11)
        e, f = float(m.tx), float(m.ty)
        # glyph space: unit box at the master centroid, y up; then phi; then the pixel frame
        k = frame.k
        sa, sb = k * a * size, -k * c * size
        sc, sd = -k * b * size, k * d * size
        px, py = frame.xy(a * cx + b * cy + e, c * cx + d * cy + f)
        deco = ' text-decoration="overline"' if ch.reversed else ""
        out.append(
            f'<text transform="matrix({num(sa)} {num(sb)} {num(sc)} {num(sd)} {num(px)} {num(py)})" '
            f'font-size="1" text-anchor="middle" dominant-baseline="central"{deco}>R</text>'
        )
    out.append("</g>")
    return out


def render_curve(rule: CurveRule, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    frame = _Frame(rule.master, opts)
    lines = _header(frame)
    lines += _arrow_defs(opts)
    depth = max(opts.depth, 0)
    if depth == 0:
        tiles = [rule.master]
    else:
        tiles = [tuple(phi(p) for p in rule.master) for phi, _ in expand(rule, depth)]
    lines += _tiles(frame, tiles, opts)
    if opts.show_order_curve:
        pts = polyline(rule, depth)
        lines.append(
            f'<polyline class="curve" points="{frame.pts(pts)}" fill="none" stroke="{opts.curve_stroke}" '
            f'stroke-width="{num(opts.curve_width)}" stroke-linejoin="round" marker-end="url(#arrow)"/>'
        )
    if opts.show_R_glyphs and rule.children:
        lines += _glyphs(frame, rule)
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
