"""Deterministic SVG rendering of a graph embedding.

Output is a pure function of the graph and style: fixed number formatting,
edges in sorted order then vertices by index, so repeated exports are
byte-identical and suitable for golden-file comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Graph


@dataclass(frozen=True)
class SvgStyle:
    scale: float = 100.0          # pixels per unit length
    vertex_radius: float = 0.02   # in unit lengths
    gray_stroke: str = "#808080"
    red_stroke: str = "#ff0000"
    margin: float = 0.05          # fraction of the bounding box

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.vertex_radius < 0:
            raise ValueError("vertex radius must be non-negative")
        if self.margin < 0:
            raise ValueError("margin must be non-negative")


def _fmt(v: float) -> str:
    return f"{v:.4f}"


def export_svg(g: Graph, style: SvgStyle | None = None) -> str:
    """Render gray and red edges as lines and vertices as filled circles,
    y-axis flipped so the drawing matches the printed orientation."""
    style = style or SvgStyle()
    if g.n == 0:
        raise ValueError("cannot render an empty graph")
    xs = [p[0] for p in g.vertices]
    ys = [p[1] for p in g.vertices]
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    pad = style.margin * max(max_x - min_x, max_y - min_y, 1.0)
    width = (max_x - min_x + 2.0 * pad) * style.scale
    height = (max_y - min_y + 2.0 * pad) * style.scale

    def X(x: float) -> float:
        return (x - min_x + pad) * style.scale

    def Y(y: float) -> float:
        return (max_y + pad - y) * style.scale

    stroke_width = _fmt(0.015 * style.scale)
    radius = _fmt(style.vertex_radius * style.scale)

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    ]
    for u, v in g.edges:
        stroke = style.red_stroke if (u, v) in g.red_edges else style.gray_stroke
        lines.append(
            f'  <line x1="{_fmt(X(g.vertices[u][0]))}" '
            f'y1="{_fmt(Y(g.vertices[u][1]))}" '
            f'x2="{_fmt(X(g.vertices[v][0]))}" '
            f'y2="{_fmt(Y(g.vertices[v][1]))}" '
            f'stroke="{stroke}" stroke-width="{stroke_width}"/>'
        )
    for x, y in g.vertices:
        lines.append(
            f'  <circle cx="{_fmt(X(x))}" cy="{_fmt(Y(y))}" '
            f'r="{radius}" fill="#000000"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
