"""SVG drawing of per-vertex or per-edge ratios on the graph geometry.

Edges are ``<line>`` elements colored on a fixed blue-to-red ramp over
``[0, 1]``. Per-vertex values color ``<circle>`` markers. The anchor
element, if any, is drawn in purple. The legend uses a ``<rect>`` filled
with a ``<linearGradient>``, so the only ``<line>`` elements are edges.
"""

from __future__ import annotations

import numpy as np

from .errors import IoError, LengthMismatch
from .graph import EdgeKey, SpatialGraph

BLUE = (0x21, 0x66, 0xAC)
RED = (0xB2, 0x18, 0x2B)
ANCHOR = "#800080"
WIDTH = 600
MARGIN = 40
LEGEND_H = 60


def color_hex(value: float) -> str:
    """Linear blend from blue at 0 to red at 1."""
    t = min(max(float(value), 0.0), 1.0)
    r, g, b = (round(c0 + t * (c1 - c0)) for c0, c1 in zip(BLUE, RED))
    return f"#{r:02x}{g:02x}{b:02x}"


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def svg_document(g: SpatialGraph, values, anchor=None, per: str | None = None) -> str:
    """Build the SVG text; ``values`` has one entry per vertex or per edge.

    ``per`` ("vertex" or "edge") settles the case ``n == m``; edges win by default.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or len(values) not in (g.n, g.m):
        raise LengthMismatch(f"{len(values)} values for a graph with n={g.n}, m={g.m}")
    if np.any(~np.isfinite(values)) or np.any((values < 0) | (values > 1)):
        raise ValueError("values must lie in [0, 1]")
    if per is None:
        per = "edge" if len(values) == g.m else "vertex"
    if per not in ("vertex", "edge") or len(values) != (g.m if per == "edge" else g.n):
        raise LengthMismatch(f"{len(values)} values do not match per={per!r}")
    per_edge = per == "edge"

    anchor_edge = anchor_vertex = None
    if anchor is not None:
        if isinstance(anchor, (tuple, list, EdgeKey)):
            anchor_edge = g.edge_index(anchor)
        else:
            anchor_vertex = int(anchor)
            g.coord(anchor_vertex)

    coords = np.asarray(g.coords, dtype=float)
    lo = coords.min(axis=0) if g.n else np.zeros(2)
    hi = coords.max(axis=0) if g.n else np.ones(2)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
    scale = (WIDTH - 2 * MARGIN) / span
    # Flip y so the picture has the usual orientation.
    px = MARGIN + (coords[:, 0] - lo[0]) * scale
    py = MARGIN + (hi[1] - coords[:, 1]) * scale
    height = int(MARGIN * 2 + (hi[1] - lo[1]) * scale + LEGEND_H)
    radius = 4

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{height}" '
        f'viewBox="0 0 {WIDTH} {height}">',
        "<defs>",
        '<linearGradient id="ramp" x1="0" y1="0" x2="1" y2="0">',
        f'<stop offset="0" stop-color="{color_hex(0)}"/>',
        f'<stop offset="1" stop-color="{color_hex(1)}"/>',
        "</linearGradient>",
        "</defs>",
        '<g id="edges" stroke-width="3" stroke-linecap="round">',
    ]
    for i, (u, v) in enumerate(g.edges.tolist()):
        if i == anchor_edge:
            color, extra = ANCHOR, ' class="anchor" stroke-width="5"'
        else:
            color, extra = (color_hex(values[i]) if per_edge else "#888888"), ""
        out.append(f'<line x1="{_fmt(px[u])}" y1="{_fmt(py[u])}" x2="{_fmt(px[v])}" '
                   f'y2="{_fmt(py[v])}" stroke="{color}"{extra}/>')
    out.append("</g>")

    if not per_edge or anchor_vertex is not None:
        out.append('<g id="vertices">')
        for i in range(g.n):
            if i == anchor_vertex:
                out.append(f'<circle cx="{_fmt(px[i])}" cy="{_fmt(py[i])}" r="{radius + 2}" '
                           f'fill="{ANCHOR}" class="anchor"/>')
            elif not per_edge:
                out.append(f'<circle cx="{_fmt(px[i])}" cy="{_fmt(py[i])}" r="{radius}" '
                           f'fill="{color_hex(values[i])}"/>')
        out.append("</g>")

    y0 = height - LEGEND_H + 15
    out += [
        '<g id="legend" font-family="sans-serif" font-size="12">',
        f'<rect x="{MARGIN}" y="{y0}" width="{WIDTH - 2 * MARGIN}" height="14" fill="url(#ramp)"/>',
        f'<text x="{MARGIN}" y="{y0 + 30}">0</text>',
        f'<text x="{WIDTH - MARGIN}" y="{y0 + 30}" text-anchor="end">1</text>',
        "</g>",
        "</svg>",
    ]
    return "\n".join(out) + "\n"


def render_svg(g: SpatialGraph, values, anchor=None, path=None, per: str | None = None) -> str:
    """Write the SVG to ``path`` (when given) and return its text.

    ``anchor`` is a vertex id or an edge given as a pair of vertex ids.
    """
    text = svg_document(g, values, anchor, per)
    if path is not None:
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise IoError(f"cannot write {path}: {exc}") from exc
    return text
