"""Deterministic SVG output: arc diagrams for layouts, grids for drawings."""

from __future__ import annotations

from .graphs import EmbeddedGraph
from .layouts import QUEUE, LeveledDrawing, LinearLayout

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)

_UNIT = 40.0
_MARGIN = 30.0


def _color(i: int) -> str:
    return _PALETTE[i % len(_PALETTE)]


def render_arc_diagram(graph: EmbeddedGraph, layout: LinearLayout) -> str:
    """Vertices on a line; queue arcs above, stack arcs below, one color per page."""
    pos = layout.position()
    n = graph.n
    width = _MARGIN * 2 + _UNIT * max(n - 1, 0)
    spine = 0.0
    max_span = max(
        (abs(pos[a] - pos[b]) for a, b in graph.edges), default=1
    )
    height = _UNIT * max_span / 2 + _MARGIN
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{2 * height:.0f}" viewBox="0 {-height:.1f} {width:.0f} {2 * height:.1f}">'
    ]
    x = lambda v: _MARGIN + _UNIT * pos[v]
    for ip, page in enumerate(layout.pages):
        up = page.kind == QUEUE
        for e in sorted(page.edges):
            a, b = graph.edges[e]
            xa, xb = sorted((x(a), x(b)))
            r = (xb - xa) / 2
            sweep = 1 if up else 0
            parts.append(
                f'<path d="M {xa:.1f} {spine:.1f} A {r:.1f} {r:.1f} 0 0 {sweep} '
                f'{xb:.1f} {spine:.1f}" fill="none" stroke="{_color(ip)}" '
                f'stroke-width="1.5"/>'
            )
    for v in layout.order:
        parts.append(
            f'<circle cx="{x(v):.1f}" cy="{spine:.1f}" r="3" fill="#000"/>'
        )
        parts.append(
            f'<text x="{x(v):.1f}" y="14" font-size="10" '
            f'text-anchor="middle">{v}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)


def render_leveled(graph: EmbeddedGraph, drawing: LeveledDrawing) -> str:
    """Leveled grid drawing: one horizontal line per level."""
    d = drawing.normalize()
    if not d.level:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="60" height="60"/>'
    levels = max(d.level.values()) + 1
    cols = max(d.pos.values()) + 1
    width = _MARGIN * 2 + _UNIT * max(cols - 1, 0)
    height = _MARGIN * 2 + _UNIT * max(levels - 1, 0)
    xy = {
        v: (_MARGIN + _UNIT * d.pos[v], height - _MARGIN - _UNIT * d.level[v])
        for v in d.level
    }
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}">'
    ]
    for a, b in graph.edges:
        if a in xy and b in xy:
            (x1, y1), (x2, y2) = xy[a], xy[b]
            parts.append(
                f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
                f'stroke="#444" stroke-width="1.5"/>'
            )
    for v, (px, py) in sorted(xy.items()):
        parts.append(f'<circle cx="{px:.1f}" cy="{py:.1f}" r="3" fill="#000"/>')
        parts.append(
            f'<text x="{px:.1f}" y="{py - 6:.1f}" font-size="10" '
            f'text-anchor="middle">{v}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts)
