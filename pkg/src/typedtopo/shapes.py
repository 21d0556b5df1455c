"""Typed lines, angles and polygon sides.

A sequence of points is a typed line for a partition of the circle into
``n'`` sectors when every step ``x_j -> x_{j+1}`` points into the same
sector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .grid import Point


@dataclass(frozen=True)
class DirectionStep:
    distance: float
    sector: int
    sectors: int


def sector_of(angle: float, sectors: int) -> int:
    # an angle on a sector boundary belongs to the sector starting there
    v = (angle % 360.0) * sectors / 360.0
    k = round(v)
    if abs(v - k) <= 1e-9:
        return int(k) % sectors
    return int(math.floor(v)) % sectors


def pair_direction(x: Point, y: Point, sectors: int) -> DirectionStep:
    if sectors < 2:
        raise DomainError(f"need at least 2 sectors, got {sectors}")
    dx, dy = y[0] - x[0], y[1] - x[1]
    if dx == 0 and dy == 0:
        raise DomainError(f"coincident points {tuple(x)} have no direction")
    angle = math.degrees(math.atan2(dy, dx))
    return DirectionStep(math.hypot(dx, dy), sector_of(angle, sectors), sectors)


def directions(points: Sequence[Point], sectors: int) -> list[int]:
    if len(points) < 2:
        raise DomainError("a direction sequence needs at least two points")
    return [pair_direction(a, b, sectors).sector for a, b in zip(points, points[1:])]


def classify_line(points: Sequence[Point], sectors: int) -> int | None:
    """Common sector index of every step, or ``None`` if the steps disagree."""
    dirs = directions(points, sectors)
    return dirs[0] if all(d == dirs[0] for d in dirs) else None


@dataclass(frozen=True)
class Side:
    sector: int
    points: tuple[Point, ...]


def decompose_polyline(points: Sequence[Point], sectors: int) -> tuple[list[Side], list[Point]]:
    """Split a point sequence into maximal constant-direction sides.

    Returns the sides and the vertex points where consecutive sides meet.
    """
    if len(points) < 3:
        raise DomainError("a polyline needs at least three points")
    dirs = directions(points, sectors)
    sides: list[Side] = []
    vertices: list[Point] = []
    start = 0
    for s in range(1, len(dirs) + 1):
        if s == len(dirs) or dirs[s] != dirs[start]:
            sides.append(Side(dirs[start], tuple(tuple(p) for p in points[start:s + 1])))
            if s < len(dirs):
                vertices.append(tuple(points[s]))
            start = s
    return sides, vertices
