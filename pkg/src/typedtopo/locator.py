"""Point location in the quotient grid and mapping of implicit curves."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .errors import CurveEvaluationError, DomainError
from .grid import (
    ORIGIN,
    AreaRef,
    GridParams,
    Point,
    area_vertex_refs,
    encode,
    href_point,
)

EPS = 1e-9


@dataclass(frozen=True)
class LocatedPoint:
    source: Point
    t: int
    theta: float
    k: int
    i: int
    w: int

    @property
    def cell(self) -> AreaRef:
        return AreaRef(self.t, self.w) if self.t else ORIGIN


def polar(params: GridParams, x: Point) -> tuple[float, float]:
    """Radius and angle in degrees ``[0, 360)`` of ``x`` about the grid center."""
    dx = x[0] - params.center[0]
    dy = x[1] - params.center[1]
    theta = math.degrees(math.atan2(dy, dx)) % 360.0
    if theta >= 360.0:
        theta = 0.0
    return math.hypot(dx, dy), theta


def track_of(params: GridParams, rho: float) -> int:
    if rho == 0:
        return 0
    # points on the circle of radius tr belong to track t
    return max(1, math.ceil(rho / params.r - EPS))


def _side(params: GridParams, inner: Point, outer: Point, x: Point) -> float:
    ex, ey = outer[0] - inner[0], outer[1] - inner[1]
    px, py = x[0] - inner[0], x[1] - inner[1]
    return (ex * py - ey * px) / math.hypot(ex, ey)


def in_area(params: GridParams, t: int, w: int, x: Point) -> bool:
    """Whether ``x`` (already known to be in track ``t``) lies in ``S^t_w``.

    The area is the region between its starting and ending edge. It owns its
    starting edge but not its ending edge.
    """
    a, b, c = area_vertex_refs(params, t, w)
    pa, pb, pc = (href_point(params, h) for h in (a, b, c))
    # orient every edge from the inner circle outward
    start = (pb, pa) if a.circle == t else (pa, pb)
    end = (pb, pc) if c.circle == t else (pc, pb)
    tol = EPS * params.r
    return _side(params, *start, x) >= -tol and _side(params, *end, x) < -tol


def locate_point(params: GridParams, x: Point) -> LocatedPoint:
    rho, theta = polar(params, x)
    t = track_of(params, rho)
    src = (float(x[0]), float(x[1]))
    if t == 0:
        return LocatedPoint(src, 0, theta, 0, 0, 0)
    tn = t * params.n
    k = min(int(math.floor(theta * tn / 360.0)), tn - 1)
    i, jj = divmod(k, t)
    w = (2 * t - 1) * i + 2 * jj
    size = (2 * t - 1) * params.n
    for cand in (w - 1, w, w + 1):
        cand %= size
        if in_area(params, t, cand, x):
            return LocatedPoint(src, t, theta, k, i, cand)
    # small n can bend edges past the neighbour window; scan the whole track
    for cand in range(size):
        if in_area(params, t, cand, x):
            return LocatedPoint(src, t, theta, k, i, cand)
    return LocatedPoint(src, t, theta, k, i, w % size)


def locate(params: GridParams, x: Point) -> AreaRef:
    return locate_point(params, x).cell


@dataclass(frozen=True)
class MappedDataset:
    """Image of a point set in the quotient grid.

    ``cells`` excludes the origin cell and is sorted by integer code;
    ``origin_count`` counts input points that fell on the grid center.
    """

    params: GridParams
    cells: tuple[AreaRef, ...]
    origin_count: int = 0
    by_track: dict[int, tuple[int, ...]] = field(default_factory=dict, compare=False)

    @property
    def codes(self) -> list[int]:
        return [encode(self.params, c) for c in self.cells]


def map_dataset(params: GridParams, points: Iterable[Point]) -> MappedDataset:
    cells = set()
    origin = 0
    for p in points:
        c = locate(params, p)
        if c.is_origin:
            origin += 1
        else:
            cells.add(c)
    return from_cells(params, cells, origin)


def from_cells(params: GridParams, cells: Iterable[AreaRef], origin_count: int = 0) -> MappedDataset:
    cells = set(cells)
    if ORIGIN in cells:
        cells.discard(ORIGIN)
        origin_count = max(origin_count, 1)
    for c in cells:
        params.check(c)
    ordered = tuple(sorted(cells, key=lambda c: encode(params, c)))
    by_track: dict[int, list[int]] = {}
    for c in ordered:
        by_track.setdefault(c.t, []).append(c.j)
    return MappedDataset(
        params, ordered, origin_count, {t: tuple(js) for t, js in by_track.items()}
    )


# -- implicit curves ------------------------------------------------------------

Evaluator = Callable[[float, float], float]


@dataclass
class ImplicitCurve:
    evaluator: Evaluator
    label: str = ""

    def __call__(self, x: float, y: float) -> float:
        v = float(self.evaluator(x, y))
        if not math.isfinite(v):
            raise CurveEvaluationError(x, y, v)
        return v


def _scan_roots(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    samples: int,
    periodic: bool = False,
) -> tuple[list[float], list[float]]:
    """Roots of a scalar function on ``[lo, hi]``.

    Returns ``(roots, coincident)``. When every sample is zero the curve lies
    along the scan line; the sample parameters are returned as ``coincident``
    and no roots are reported.
    """
    if periodic:
        ts = [lo + (hi - lo) * s / samples for s in range(samples)]
    else:
        ts = [lo + (hi - lo) * s / (samples - 1) for s in range(samples)]
    vals = [g(s) for s in ts]
    if all(abs(v) <= 1e-12 for v in vals):
        return [], ts
    pairs = list(zip(range(len(ts)), range(1, len(ts))))
    if periodic:
        pairs.append((len(ts) - 1, 0))
    roots = [ts[i] for i, v in enumerate(vals) if v == 0.0]
    for a, b in pairs:
        fa, fb = vals[a], vals[b]
        if fa == 0.0 or fb == 0.0 or (fa > 0) == (fb > 0):
            continue
        x0 = ts[a]
        x1 = ts[b] if b else hi
        for _ in range(200):
            if x1 - x0 <= 1e-12:
                break
            mid = 0.5 * (x0 + x1)
            fm = g(mid)
            if fm == 0.0:
                x0 = x1 = mid
                break
            if (fm > 0) == (fa > 0):
                x0, fa = mid, fm
            else:
                x1 = mid
        roots.append(0.5 * (x0 + x1))
    roots.sort()
    merged: list[float] = []
    for x in roots:
        if not merged or x - merged[-1] > EPS:
            merged.append(x)
    return merged, []


def curve_points(
    params: GridParams,
    curve: Evaluator,
    t0: int,
    samples: int = 1024,
) -> list[Point]:
    """Intersections of ``curve = 0`` with the grid circles and dividing rays.

    Circles of radius ``tr`` for ``t = 1..t0`` are scanned by angle; the lines
    through the center and each ``H^t_k`` are scanned over ``[-t0 r, t0 r]``.
    Points within ``1e-9`` of the center snap to it.
    """
    if t0 < 1:
        raise DomainError(f"window must cover at least one track, got t0={t0}")
    if not isinstance(curve, ImplicitCurve):
        curve = ImplicitCurve(curve)
    cx, cy = params.center
    found: list[Point] = []

    def emit(x: float, y: float):
        if math.hypot(x - cx, y - cy) <= EPS * max(1.0, params.r):
            found.append((cx, cy))
        else:
            found.append((x, y))

    for t in range(1, t0 + 1):
        rad = t * params.r

        def on_circle(phi: float, rad=rad) -> float:
            a = math.radians(phi)
            return curve(cx + rad * math.cos(a), cy + rad * math.sin(a))

        roots, flat = _scan_roots(on_circle, 0.0, 360.0, samples, periodic=True)
        for phi in roots + flat:
            a = math.radians(phi)
            emit(cx + rad * math.cos(a), cy + rad * math.sin(a))

    span = t0 * params.r
    seen_lines = set()
    for t in range(1, t0 + 1):
        tn = t * params.n
        for k in range(tn):
            # a line through the center is the same for angles 180 degrees apart
            key = Fraction(2 * k, tn) % 1
            if key in seen_lines:
                continue
            seen_lines.add(key)
            a = math.radians(360.0 * k / tn)
            ux, uy = math.cos(a), math.sin(a)

            def on_line(s: float, ux=ux, uy=uy) -> float:
                return curve(cx + s * ux, cy + s * uy)

            roots, flat = _scan_roots(on_line, -span, span, samples)
            for s in roots + flat:
                emit(cx + s * ux, cy + s * uy)
    return found


def map_curve(
    params: GridParams,
    curve: Evaluator,
    t0: int,
    samples: int = 1024,
) -> set[AreaRef]:
    return {locate(params, p) for p in curve_points(params, curve, t0, samples)}

