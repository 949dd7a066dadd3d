"""Deterministic SVG drawings of tilings.

Coordinates are converted to floats only here, printed with 12 significant
digits, so the same tiling always produces the same bytes.
"""
from __future__ import annotations

from .geometry import TRAPEZOID, Point
from .tiling import Tiling

LAYERS = ("tiles", "labels", "vertices", "hgraph", "segments")

_FILL = ("#f2d7a6", "#a6cbe8")  # positive / mirrored tiles


def _num(v: float) -> str:
    s = f"{v:.12g}"
    return "0" if s == "-0" else s


def render_svg(t: Tiling, layers=("tiles",), size: float = 400.0) -> str:
    unknown = set(layers) - set(LAYERS)
    if unknown:
        raise ValueError(f"unknown layers: {', '.join(sorted(unknown))}")
    w, h = float(t.region.width), float(t.region.height)
    scale = size / max(w, h)
    pad = 10.0

    def xy(p: Point) -> tuple[str, str]:
        x, y = p.to_float()
        return _num(pad + x * scale), _num(pad + (h - y) * scale)

    width, height = _num(2 * pad + w * scale), _num(2 * pad + h * scale)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="{_num(pad)}" y="{_num(pad)}" width="{_num(w * scale)}" height="{_num(h * scale)}" '
        'fill="none" stroke="#000" stroke-width="2"/>',
    ]
    if "tiles" in layers:
        out.append('<g id="tiles" stroke="#333" stroke-width="1">')
        for tile, poly in zip(t.tiles, t.polygons):
            pts = " ".join(",".join(xy(p)) for p in poly)
            out.append(f'<polygon points="{pts}" fill="{_FILL[int(tile.iso.reflect)]}"/>')
        out.append("</g>")
    if "labels" in layers:
        out.append('<g id="labels" font-family="sans-serif" font-size="10" text-anchor="middle">')
        for j, poly in enumerate(t.polygons):
            cx = sum(p.to_float()[0] for p in poly) / len(poly)
            cy = sum(p.to_float()[1] for p in poly) / len(poly)
            out.append(f'<text x="{_num(pad + cx * scale)}" y="{_num(pad + (h - cy) * scale)}">{j}</text>')
        out.append("</g>")
    if "vertices" in layers:
        from .incidence import build_incidence

        out.append('<g id="vertices">')
        colours = {"corner": "#000", "boundary": "#555", "interior": "#c00"}
        for v in build_incidence(t):
            x, y = xy(v.w)
            colour = "#e80" if v.hanging else colours[v.vertex_class]
            out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="{colour}"/>')
        out.append("</g>")
    if "hgraph" in layers and t.prototile.kind == TRAPEZOID:
        from .hgraph import build_hgraph

        out.append(
            '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" '
            'orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#06c"/></marker></defs>'
        )
        out.append('<g id="hgraph" stroke="#06c" stroke-width="2" marker-end="url(#arrow)">')
        for e in build_hgraph(t, check=False).edges:
            (x1, y1), (x2, y2) = xy(e.origin), xy(e.terminus)
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
        out.append("</g>")
    if "segments" in layers:
        from .segments import extract_maximal_segments

        out.append('<g id="segments" stroke="#090" stroke-width="1" stroke-dasharray="4 2">')
        for m in extract_maximal_segments(t):
            if m.boundary:
                continue
            (x1, y1), (x2, y2) = xy(m.u), xy(m.v)
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
