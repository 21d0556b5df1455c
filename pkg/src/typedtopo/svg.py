"""Static SVG view of a report: grid, occupied cells, branches and holes."""

from __future__ import annotations

import math
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .grid import GridParams, area_vertex_refs, href_point
from .report import report_cells, report_params

CELL_FILL = "#9ecae1"
LOWER_STROKE = "#d62728"
UPPER_STROKE = "#2ca02c"
BRANCH_STROKE = "#333333"


def _f(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _xy(p) -> str:
    # flip y so the picture has the usual math orientation
    return f"{_f(p[0])},{_f(-p[1])}"


def _cell_path(params: GridParams, t: int, w: int) -> str:
    refs = area_vertex_refs(params, t, w)
    a, b, c = (href_point(params, h) for h in refs)
    d = f"M{_xy(a)} L{_xy(b)} L{_xy(c)}"
    rad = refs[0].circle * params.r
    if rad > 0:
        # close along the circle carrying the first and last corner
        d += f" A{_f(rad)},{_f(rad)} 0 0 1 {_xy(a)}"
    return d + " Z"


def _polyline(points, **attrs) -> str:
    pts = " ".join(_xy(p) for p in points)
    extra = "".join(f" {k.rstrip('_').replace('_', '-')}={quoteattr(str(v))}" for k, v in attrs.items())
    return f'<polyline points="{pts}" fill="none"{extra}/>'


def _centroid(params: GridParams, comp) -> tuple[float, float]:
    t, lo, hi = comp
    size = params.areas_in_track(t)
    span = (hi - lo) % size + 1
    ang = math.radians(360.0 * (lo + span / 2) / size)
    rad = (2 * t - 1) * params.r / 2
    return rad * math.cos(ang), rad * math.sin(ang)


def svg_text(report: dict) -> str:
    params = report_params(report)
    T = int(report["grid"]["t_render"])
    r = params.r
    R = T * r
    m = 0.1 * R + r / 2
    sw = r * 0.02
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_f(-R - m)} {_f(-R - m)} {_f(2 * (R + m))} {_f(2 * (R + m))}" '
        f'width="800" height="800">',
        f"<title>{escape(f'quotient grid r={params.r} n={params.n}')}</title>",
        "<defs>",
        '<pattern id="hatch" patternUnits="userSpaceOnUse" '
        f'width="{_f(r / 4)}" height="{_f(r / 4)}" patternTransform="rotate(45)">',
        f'<line x1="0" y1="0" x2="0" y2="{_f(r / 4)}" stroke="#444444" stroke-width="{_f(sw)}"/>',
        "</pattern>",
        "</defs>",
    ]

    out.append('<g id="cells">')
    for c in report_cells(report):
        out.append(f'<path d="{_cell_path(params, c.t, c.j)}" fill="{CELL_FILL}" stroke="none"/>')
    out.append("</g>")

    out.append(f'<g id="grid" fill="none" stroke="#bbbbbb" stroke-width="{_f(sw)}">')
    for t in range(1, T + 1):
        out.append(f'<circle cx="0" cy="0" r="{_f(t * r)}"/>')
    for t in range(1, T + 1):
        # each area's starting edge; together they draw every edge of the track
        for w in range(params.areas_in_track(t)):
            a, b, _ = (href_point(params, h) for h in area_vertex_refs(params, t, w))
            out.append(f'<line x1="{_f(a[0])}" y1="{_f(-a[1])}" x2="{_f(b[0])}" y2="{_f(-b[1])}"/>')
    out.append("</g>")

    out.append('<g id="holes">')
    for h in report["holes"]:
        pts = " ".join(_xy(p) for p in h["polygon"])
        out.append(f'<polygon points="{pts}" fill="url(#hatch)" stroke="#444444" stroke-width="{_f(sw)}"/>')
    out.append("</g>")

    out.append('<g id="boundaries">')
    for b in report["boundaries"]:
        out.append(_polyline(b["lower"], stroke=LOWER_STROKE, stroke_width=_f(2 * sw), class_="lb"))
        out.append(_polyline(b["upper"], stroke=UPPER_STROKE, stroke_width=_f(2 * sw), class_="ub"))
    out.append("</g>")

    out.append('<g id="branches">')
    for br in report["branches"]:
        out.append(
            _polyline(
                [_centroid(params, c) for c in br],
                stroke=BRANCH_STROKE,
                stroke_width=_f(2 * sw),
                stroke_dasharray=f"{_f(r / 8)} {_f(r / 8)}",
            )
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(report: dict, path) -> None:
    Path(path).write_text(svg_text(report), encoding="utf-8")
