"""The polar quotient grid R^2/(r, n).

Track ``t`` is the annulus between the circles of radius ``(t-1)r`` and
``tr``. It is cut into ``(2t-1)n`` triangle-like areas whose corners are
the dividing points ``H^t_k`` (``k < tn``) on the outer circle and
``H^(t-1)_k`` on the inner one. Track 0 is the single origin cell.

Cells are numbered consecutively: track ``t`` occupies the integers
``(t-1)^2 n .. t^2 n - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt
from typing import Iterable, NamedTuple, Sequence

from .errors import DomainError

Point = tuple[float, float]


@dataclass(frozen=True)
class GridParams:
    r: float
    n: int = 12
    center: Point = (0.0, 0.0)

    def __post_init__(self):
        if not (self.r > 0 and math.isfinite(self.r)):
            raise DomainError(f"track width r must be positive, got {self.r!r}")
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"sector count n must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    def areas_in_track(self, t: int) -> int:
        """Number of areas in track ``t`` (1 for the origin cell)."""
        if t == 0:
            return 1
        return (2 * t - 1) * self.n

    def check(self, cell: "AreaRef") -> None:
        if cell.t < 0:
            raise DomainError(f"negative track in {cell}")
        if cell.t == 0:
            if cell.j != 0:
                raise DomainError(f"origin cell must have j=0, got {cell}")
            return
        if not 0 <= cell.j < self.areas_in_track(cell.t):
            raise DomainError(
                f"area index {cell.j} out of range for track {cell.t} "
                f"(0..{self.areas_in_track(cell.t) - 1})"
            )


@dataclass(frozen=True, order=True)
class AreaRef:
    """Cell ``S^t_j``; ``AreaRef(0, 0)`` is the origin cell."""

    t: int
    j: int

    @property
    def is_origin(self) -> bool:
        return self.t == 0

    def __str__(self) -> str:
        return "O" if self.t == 0 else f"S^{self.t}_{self.j}"


ORIGIN = AreaRef(0, 0)


class HRef(NamedTuple):
    """Dividing point ``H^circle_k``; ``k`` is reduced modulo ``circle * n``."""

    circle: int
    k: int


def href(params: GridParams, circle: int, k: int) -> HRef:
    if circle == 0:
        return HRef(0, 0)
    return HRef(circle, k % (circle * params.n))


# -- dividing points and areas ------------------------------------------------


def dividing_point(params: GridParams, t: int, k: int) -> Point:
    if t < 0:
        raise DomainError(f"track must be >= 0, got {t}")
    cx, cy = params.center
    if t == 0:
        if k != 0:
            raise DomainError("the origin circle has only H^0_0")
        return (cx, cy)
    m = t * params.n
    if not 0 <= k <= m:
        raise DomainError(f"dividing point index {k} out of range 0..{m} on circle {t}")
    # H^t_{tn} is H^t_0
    theta = math.radians(360.0 * (k % m) / m)
    rad = t * params.r
    return (cx + rad * math.cos(theta), cy + rad * math.sin(theta))


def href_point(params: GridParams, h: HRef) -> Point:
    if h.circle == 0:
        return params.center
    return dividing_point(params, h.circle, h.k % (h.circle * params.n))


def area_vertex_refs(params: GridParams, t: int, w: int) -> tuple[HRef, HRef, HRef]:
    """Dividing-point references of the three corners of ``S^t_w``.

    Corners are listed in angular order; the first two form the area's
    starting edge and the last two its ending edge. Returned ``k`` values
    are not reduced, so the last corner of the final area reads ``H^t_{tn}``.
    """
    if t < 1:
        raise DomainError("the origin cell has no area corners")
    size = (2 * t - 1) * params.n
    if not 0 <= w < size:
        raise DomainError(f"area index {w} out of range 0..{size - 1} on track {t}")
    i, m = divmod(w, 2 * t - 1)
    if m % 2 == 0:
        k = i * t + m // 2
        b = i * (t - 1) + m // 2
        return HRef(t, k), _lower(t, b), HRef(t, k + 1)
    b = i * (t - 1) + (m - 1) // 2
    k = i * t + (m + 1) // 2
    return _lower(t, b), HRef(t, k), _lower(t, b + 1)


def _lower(t: int, b: int) -> HRef:
    return HRef(0, 0) if t == 1 else HRef(t - 1, b)


def area_vertices(params: GridParams, t: int, w: int) -> tuple[Point, Point, Point]:
    a, b, c = area_vertex_refs(params, t, w)
    return href_point(params, a), href_point(params, b), href_point(params, c)


# -- representatives and metric -------------------------------------------------


def representative_angle(params: GridParams, t: int, j: int) -> float:
    """Angle in degrees of the representative point of ``S^t_j``."""
    size = (2 * t - 1) * params.n
    return 360.0 * (j + 0.5) / size


def representative(params: GridParams, t: int, j: int) -> Point:
    if t == 0:
        if j != 0:
            raise DomainError("origin cell must have j=0")
        return params.center
    params.check(AreaRef(t, j))
    theta = math.radians(representative_angle(params, t, j))
    rad = (2 * t - 1) * params.r / 2
    cx, cy = params.center
    return (cx + rad * math.cos(theta), cy + rad * math.sin(theta))


def metric(params: GridParams, a: AreaRef, b: AreaRef) -> float:
    """Distance between two cells, measured between their representative points."""
    params.check(a)
    params.check(b)
    if a == b:
        return 0.0
    pa = representative(params, a.t, a.j)
    pb = representative(params, b.t, b.j)
    return math.hypot(pa[0] - pb[0], pa[1] - pb[1])


# -- integer enumeration --------------------------------------------------------


def encode(params: GridParams, cell: AreaRef) -> int:
    if cell.t == 0:
        raise DomainError("the origin cell has no integer code")
    params.check(cell)
    return (cell.t - 1) ** 2 * params.n + cell.j


def decode(params: GridParams, code: int) -> AreaRef:
    if int(code) != code or code < 0:
        raise DomainError(f"cell code must be a non-negative integer, got {code!r}")
    code = int(code)
    t = isqrt(code // params.n) + 1
    return AreaRef(t, code - (t - 1) ** 2 * params.n)


def track_sequence(params: GridParams, codes: Iterable[int]) -> list[int]:
    """Map each code to ``(t-1)^2`` where ``t`` is its track."""
    return [(decode(params, c).t - 1) ** 2 for c in codes]


def track_start(params: GridParams, t: int) -> int:
    """First code of track ``t``."""
    return (t - 1) ** 2 * params.n


# -- sizing and padding ---------------------------------------------------------


def min_sectors(r: float) -> int:
    """Smallest sector count whose chord ``H^1_0 H^1_2`` is no longer than ``r``.

    ``n = 2`` is skipped: there ``H^1_2`` wraps onto ``H^1_0`` and the chord
    degenerates to a point.
    """
    if not r > 0:
        raise DomainError(f"r must be positive, got {r!r}")
    n = 3
    while 2 * r * math.sin(math.radians(360.0 / n)) > r * (1 + 1e-12):
        n += 1
    return n


def pad(
    params: GridParams,
    points: Iterable[Point],
    window: Sequence[float],
) -> list[Point]:
    """Add the lattice ``{center + (a r, b r)}`` that falls inside ``window``.

    ``window`` is ``(xmin, ymin, xmax, ymax)`` with inclusive bounds.
    """
    xmin, ymin, xmax, ymax = (float(v) for v in window)
    if not all(math.isfinite(v) for v in (xmin, ymin, xmax, ymax)):
        raise DomainError("padding window must be finite")
    if xmin > xmax or ymin > ymax:
        raise DomainError(f"empty padding window {tuple(window)}")
    r = params.r
    cx, cy = params.center
    eps = 1e-9
    a_lo = math.ceil((xmin - cx) / r - eps)
    a_hi = math.floor((xmax - cx) / r + eps)
    b_lo = math.ceil((ymin - cy) / r - eps)
    b_hi = math.floor((ymax - cy) / r + eps)
    out = [tuple(map(float, p)) for p in points]
    seen = set(out)
    for a in range(a_lo, a_hi + 1):
        for b in range(b_lo, b_hi + 1):
            p = (cx + a * r, cy + b * r)
            if p not in seen:
                seen.add(p)
                out.append(p)
    return out
