"""Static SVG pictures of curves on the polygon."""

from __future__ import annotations

import math
from typing import Sequence

from .curves import NormalCurve, realize_arcs
from .surface import PolygonSurface

COLORS = ("#c0392b", "#2471a3", "#1e8449", "#7d3c98")
SIZE = 480
RADIUS = 200


def corner_xy(S: PolygonSurface, j: int) -> tuple[float, float]:
    # corner j sits between sides j-1 and j; corner 0 on the positive x axis
    a = 2 * math.pi * j / S.sides
    return SIZE / 2 + RADIUS * math.cos(a), SIZE / 2 - RADIUS * math.sin(a)


def _triangle_xy(S: PolygonSurface, t: int):
    # fan triangle t: center, corner t, corner t + 1 (slot k runs from
    # vertex k to vertex k + 1)
    return ((SIZE / 2, SIZE / 2), corner_xy(S, t), corner_xy(S, t + 1))


def _point(S, t, slot, counts):
    k, pos = slot
    n = counts[t][k]
    s = (pos + 1) / (n + 1)
    (x0, y0), (x1, y1) = _triangle_xy(S, t)[k], _triangle_xy(S, t)[(k + 1) % 3]
    return x0 + s * (x1 - x0), y0 + s * (y1 - y0)


def render(S: PolygonSurface, curves: Sequence[tuple[str, NormalCurve]]) -> str:
    """SVG 1.1 drawing of one or two curves, each as chords inside the fan
    triangles (a curve leaving through a side re-enters at the paired
    side)."""
    T = S.triangulation
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
    ]
    poly = " ".join(f"{x:.2f},{y:.2f}" for x, y in (corner_xy(S, j) for j in range(S.sides)))
    lines.append(f'<polygon points="{poly}" fill="none" stroke="#555" stroke-width="1"/>')
    for j in range(S.sides):
        x, y = corner_xy(S, j)
        lines.append(
            f'<line x1="{SIZE / 2:.2f}" y1="{SIZE / 2:.2f}" x2="{x:.2f}" y2="{y:.2f}" '
            'stroke="#ddd" stroke-width="0.5"/>'
        )
    if curves:
        R = realize_arcs(S, [c for _, c in curves])
        from .triangulation import edge_of

        counts = [[len(R.edge_points[edge_of(x)]) for x in tri] for tri in T.triangles]
        for o, cyc in R.cycles:
            name = curves[o][0]
            pts = []
            for t, cp, cq in cyc:
                pts.append((_point(S, t, cp, counts), _point(S, t, cq, counts)))
            color = COLORS[o % len(COLORS)]
            lines.append(f'<g id="{name}" stroke="{color}" stroke-width="1.5" fill="none">')
            # consecutive chords meeting at a spoke form one polyline; a
            # side crossing starts a new one at the paired side
            run = [pts[0][0], pts[0][1]]
            for p, q in pts[1:]:
                if math.dist(p, run[-1]) < 1e-6:
                    run.append(q)
                else:
                    lines.append(_polyline(run))
                    run = [p, q]
            lines.append(_polyline(run))
            lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _polyline(points) -> str:
    return '<polyline points="' + " ".join(f"{x:.2f},{y:.2f}" for x, y in points) + '"/>'
