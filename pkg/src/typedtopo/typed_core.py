"""Typed topology on a finite planar point set.

Every point carries least neighbourhoods for four families of types:
closed disks, left and right half-disks, and closed angular sectors
(``dir``). Closures, trails, tracks and type-Q connectivity are all
computed from these least neighbourhoods.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError

Point = tuple[float, float]

EPS = 1e-9
KINDS = ("disk", "left", "right", "dir")


@dataclass(frozen=True, order=True)
class TypeTag:
    kind: str
    radius: float
    sector_index: int = 0
    sector_count: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown type kind {self.kind!r}")
        if not self.radius > 0:
            raise DomainError(f"type radius must be positive, got {self.radius!r}")
        if self.kind == "dir":
            if self.sector_count < 2 or not 0 <= self.sector_index < self.sector_count:
                raise DomainError(
                    f"bad sector {self.sector_index} of {self.sector_count}"
                )

    @classmethod
    def disk(cls, r: float) -> "TypeTag":
        return cls("disk", r)

    @classmethod
    def left(cls, r: float) -> "TypeTag":
        return cls("left", r)

    @classmethod
    def right(cls, r: float) -> "TypeTag":
        return cls("right", r)

    @classmethod
    def dir(cls, r: float, i: int, n: int) -> "TypeTag":
        return cls("dir", r, i, n)

    def __str__(self) -> str:
        if self.kind == "dir":
            return f"dir({self.radius:g},{self.sector_index}/{self.sector_count})"
        return f"{self.kind}-{self.radius:g}"


def all_directions(r: float, n: int) -> frozenset[TypeTag]:
    """The type set ``Q_r``: every sector of radius ``r`` in an ``n``-partition."""
    return frozenset(TypeTag.dir(r, i, n) for i in range(n))


def _in_nbhd(p: TypeTag, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Whether ``ys`` lies in the least ``p``-neighbourhood of ``xs`` (broadcast)."""
    d = ys - xs
    dist = np.hypot(d[..., 0], d[..., 1])
    inside = dist <= p.radius * (1 + EPS) + EPS
    if p.kind == "left":
        inside &= d[..., 0] <= EPS
    elif p.kind == "right":
        inside &= d[..., 0] >= -EPS
    elif p.kind == "dir":
        step = 360.0 / p.sector_count
        ang = np.degrees(np.arctan2(d[..., 1], d[..., 0])) % 360.0
        off = (ang - p.sector_index * step) % 360.0
        inside &= (off <= step + EPS) | (off >= 360.0 - EPS)
    same = (d[..., 0] == 0) & (d[..., 1] == 0)
    return inside | same


class FinitePointSpace:
    """An immutable finite set of distinct plane points."""

    def __init__(self, points: Iterable[Sequence[float]]):
        pts = [(float(p[0]), float(p[1])) for p in points]
        if not pts:
            raise DomainError("a point space needs at least one point")
        index = {}
        for i, p in enumerate(pts):
            if not (math.isfinite(p[0]) and math.isfinite(p[1])):
                raise DomainError(f"non-finite point {p}")
            if p in index:
                raise DomainError(f"duplicate point {p}")
            index[p] = i
        self.points: tuple[Point, ...] = tuple(pts)
        self.coords = np.array(pts, dtype=float)
        self._index = index
        self._tree: cKDTree | None = None

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return (float(p[0]), float(p[1])) in self._index

    def index(self, p: Sequence[float]) -> int:
        try:
            return self._index[(float(p[0]), float(p[1]))]
        except KeyError:
            raise DomainError(f"point {tuple(p)} is not in the space") from None

    def indices(self, pts: Iterable[Sequence[float]]) -> list[int]:
        return sorted({self.index(p) for p in pts})

    def subset(self, idx: Iterable[int]) -> frozenset[Point]:
        return frozenset(self.points[i] for i in idx)

    @property
    def tree(self) -> cKDTree:
        if self._tree is None:
            self._tree = cKDTree(self.coords)
        return self._tree

    def members(self, p: TypeTag, i: int) -> np.ndarray:
        """Indices of the least ``p``-neighbourhood of point ``i``."""
        near = np.array(self.tree.query_ball_point(self.coords[i], p.radius * (1 + EPS) + EPS))
        if near.size == 0:
            return np.array([i])
        mask = _in_nbhd(p, self.coords[i], self.coords[near])
        return np.sort(near[mask])

    def reached_by(self, p: TypeTag, i: int) -> np.ndarray:
        """Indices ``y`` whose least ``p``-neighbourhood contains point ``i``."""
        near = np.array(self.tree.query_ball_point(self.coords[i], p.radius * (1 + EPS) + EPS))
        if near.size == 0:
            return np.array([i])
        mask = _in_nbhd(p, self.coords[near], self.coords[i])
        return np.sort(near[mask])


def _types(Q) -> tuple[TypeTag, ...]:
    if isinstance(Q, TypeTag):
        return (Q,)
    qs = tuple(sorted(set(Q)))
    if not qs:
        raise DomainError("type set must be non-empty")
    return qs


def neighborhood(space: FinitePointSpace, p: TypeTag, x: Sequence[float]) -> frozenset[Point]:
    return space.subset(space.members(p, space.index(x)))


def _closure_idx(space: FinitePointSpace, idx: Iterable[int], qs: tuple[TypeTag, ...]) -> set[int]:
    out: set[int] = set()
    for i in idx:
        for p in qs:
            out.update(space.reached_by(p, i).tolist())
    return out


def direct_closure(space: FinitePointSpace, A: Iterable[Sequence[float]], Q) -> frozenset[Point]:
    """Points ``y`` whose least neighbourhood for some type in ``Q`` meets ``A``."""
    qs = _types(Q)
    return space.subset(_closure_idx(space, space.indices(A), qs))


def _layers(space: FinitePointSpace, idx: list[int], qs) -> list[set[int]]:
    seen = set(idx)
    layers = [set(idx)]
    frontier = set(idx)
    while frontier:
        # CL_{t+1} \ CL_t only grows from points first reached at step t
        new = _closure_idx(space, frontier, qs) - seen
        if not new:
            break
        layers.append(new)
        seen |= new
        frontier = new
    return layers


def tracks(space: FinitePointSpace, A: Iterable[Sequence[float]], Q) -> list[frozenset[Point]]:
    """Layers ``Track_0 = A, Track_1, ...`` up to the last non-empty one."""
    qs = _types(Q)
    return [space.subset(layer) for layer in _layers(space, space.indices(A), qs)]


def trail(space: FinitePointSpace, A: Iterable[Sequence[float]], Q) -> frozenset[Point]:
    qs = _types(Q)
    out: set[int] = set()
    for layer in _layers(space, space.indices(A), qs):
        out |= layer
    return space.subset(out)


# -- connectivity ----------------------------------------------------------------
#
# Connectivity compares neighbourhoods as plane regions: two points are linked
# when their chosen regions overlap. Each region is a closed disk cut by at most
# two half-planes through its center, so overlap is a small convex feasibility
# problem.


@dataclass(frozen=True)
class Region:
    """Closed disk of ``radius`` about ``center`` intersected with half-planes.

    Each half-plane ``(a, b, c)`` keeps the points with ``a*x + b*y <= c``.
    """

    center: Point
    radius: float
    halfplanes: tuple[tuple[float, float, float], ...] = ()

    def contains(self, z: Point, tol: float = EPS) -> bool:
        scale = max(1.0, self.radius)
        if math.hypot(z[0] - self.center[0], z[1] - self.center[1]) > self.radius + tol * scale:
            return False
        return all(a * z[0] + b * z[1] - c <= tol * scale for a, b, c in self.halfplanes)


def region(p: TypeTag, x: Sequence[float]) -> Region:
    cx, cy = float(x[0]), float(x[1])
    if p.kind == "disk":
        hp = ()
    elif p.kind == "left":
        hp = ((1.0, 0.0, cx),)
    elif p.kind == "right":
        hp = ((-1.0, 0.0, -cx),)
    else:
        step = 2 * math.pi / p.sector_count
        a0 = p.sector_index * step
        a1 = a0 + step
        u0 = (math.cos(a0), math.sin(a0))
        u1 = (math.cos(a1), math.sin(a1))
        # left of the starting ray, right of the ending ray
        n0 = (u0[1], -u0[0])
        n1 = (-u1[1], u1[0])
        hp = (
            (n0[0], n0[1], n0[0] * cx + n0[1] * cy),
            (n1[0], n1[1], n1[0] * cx + n1[1] * cy),
        )
    return Region((cx, cy), float(p.radius), hp)


def _line_circle(a, b, c, center, rad):
    # points on a*x + b*y = c at distance rad from center
    norm = math.hypot(a, b)
    a, b, c = a / norm, b / norm, c / norm
    d = a * center[0] + b * center[1] - c
    foot = (center[0] - a * d, center[1] - b * d)
    h2 = rad * rad - d * d
    if h2 < 0:
        return [foot] if h2 > -EPS * max(1.0, rad) ** 2 else []
    h = math.sqrt(h2)
    return [(foot[0] - b * h, foot[1] + a * h), (foot[0] + b * h, foot[1] - a * h)]


def _circle_circle(c1, r1, c2, r2):
    dx, dy = c2[0] - c1[0], c2[1] - c1[1]
    d = math.hypot(dx, dy)
    if d == 0 or d > r1 + r2 or d < abs(r1 - r2):
        return []
    a = (r1 * r1 - r2 * r2 + d * d) / (2 * d)
    h = math.sqrt(max(r1 * r1 - a * a, 0.0))
    mx, my = c1[0] + a * dx / d, c1[1] + a * dy / d
    return [(mx - h * dy / d, my + h * dx / d), (mx + h * dy / d, my - h * dx / d)]


def regions_overlap(u: Region, v: Region) -> bool:
    """Exact test for a common point of two regions.

    The point of the intersection nearest ``u.center`` has at most two
    active constraints, so it is the center itself, a projection of it onto
    one constraint boundary, or a crossing of two boundaries. Checking that
    finite candidate list decides emptiness.
    """
    d = math.hypot(u.center[0] - v.center[0], u.center[1] - v.center[1])
    if d > u.radius + v.radius + EPS * max(1.0, u.radius, v.radius):
        return False
    lines = list(u.halfplanes) + list(v.halfplanes)
    circles = [(u.center, u.radius), (v.center, v.radius)]
    cands = [u.center, v.center]
    if d > 0:
        cands.append((
            v.center[0] + v.radius * (u.center[0] - v.center[0]) / d,
            v.center[1] + v.radius * (u.center[1] - v.center[1]) / d,
        ))
    for a, b, c in lines:
        s = (a * u.center[0] + b * u.center[1] - c) / (a * a + b * b)
        cands.append((u.center[0] - a * s, u.center[1] - b * s))
        for center, rad in circles:
            cands.extend(_line_circle(a, b, c, center, rad))
    for i, (a1, b1, c1) in enumerate(lines):
        for a2, b2, c2 in lines[i + 1:]:
            det = a1 * b2 - a2 * b1
            if abs(det) > 1e-12:
                cands.append(((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det))
    cands.extend(_circle_circle(u.center, u.radius, v.center, v.radius))
    return any(u.contains(z) and v.contains(z) for z in cands)


class _Find:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


class _OverlapTable:
    """Pairwise overlap of every (point, type) region within a point subset."""

    def __init__(self, coords: np.ndarray, qs: tuple[TypeTag, ...]):
        self.m = len(coords)
        self.nq = len(qs)
        regions = [[region(p, c) for p in qs] for c in coords]
        reach = 2 * max(p.radius for p in qs) * (1 + EPS) + 2 * EPS
        self.pairs: dict[tuple[int, int], np.ndarray] = {}
        for a, b in sorted(cKDTree(coords).query_pairs(reach)):
            table = np.zeros((self.nq, self.nq), dtype=bool)
            for i in range(self.nq):
                for j in range(self.nq):
                    table[i, j] = regions_overlap(regions[a][i], regions[b][j])
            if table.any():
                self.pairs[(a, b)] = table

    def restrict(self, members: list[int]) -> "_OverlapTable":
        local = {a: k for k, a in enumerate(members)}
        sub = object.__new__(_OverlapTable)
        sub.m = len(members)
        sub.nq = self.nq
        sub.pairs = {
            (local[a], local[b]): t
            for (a, b), t in self.pairs.items()
            if a in local and b in local
        }
        return sub

    def connected(self, allowed: list[np.ndarray]) -> bool:
        """Whether the graph "some allowed types overlap" spans every point."""
        if self.m <= 1:
            return True
        uf = _Find(self.m)
        groups = self.m
        for (a, b), table in self.pairs.items():
            if table[np.ix_(allowed[a], allowed[b])].any() and uf.union(a, b):
                groups -= 1
                if groups == 1:
                    return True
        return groups == 1


def _q_connected(tab: _OverlapTable) -> bool:
    m, nq = tab.m, tab.nq
    if m <= 1:
        return True
    every = np.ones(nq, dtype=bool)
    allowed = [every] * m
    if not tab.connected(allowed):
        return False
    if nq == 1:
        return True
    for k in range(nq):
        only = np.zeros(nq, dtype=bool)
        only[k] = True
        if tab.connected([only] * m):
            return True

    # backtracking over per-point types; unassigned points keep every type,
    # which over-approximates their links and prunes dead branches early
    adj: list[list[int]] = [[] for _ in range(m)]
    for a, b in tab.pairs:
        adj[a].append(b)
        adj[b].append(a)
    order = [0]
    seen = {0}
    for v in order:
        for u in sorted(adj[v]):
            if u not in seen:
                seen.add(u)
                order.append(u)
    singles = [np.eye(nq, dtype=bool)[k] for k in range(nq)]
    current = list(allowed)

    def search(pos: int) -> bool:
        if pos == m:
            return True
        v = order[pos]
        for k in range(nq):
            current[v] = singles[k]
            if tab.connected(current) and search(pos + 1):
                return True
        current[v] = every
        return False

    return search(0)


def is_type_q_connected(space: FinitePointSpace, A: Iterable[Sequence[float]], Q) -> bool:
    """Whether some choice of one type per point links all of ``A``.

    Two points are linked when their chosen neighbourhoods overlap as plane
    regions. A split of ``A`` has disjoint neighbourhood unions exactly when
    no link crosses it, so this is the usual no-separating-split condition.
    """
    qs = _types(Q)
    idx = space.indices(A)
    if not idx:
        raise DomainError("connectivity of the empty set is undefined")
    return _q_connected(_OverlapTable(space.coords[idx], qs))


def connected_components(space: FinitePointSpace, A: Iterable[Sequence[float]], Q) -> list[frozenset[Point]]:
    """Split ``A`` into maximal type-Q-connected parts, ordered by smallest point.

    Parts start as the pieces of the "some pair of types overlaps" graph.
    With several types such a piece can still fail as a whole; it is then
    peeled greedily, growing each part from its smallest remaining point.
    """
    qs = _types(Q)
    idx = space.indices(A)
    if not idx:
        return []
    tab = _OverlapTable(space.coords[idx], qs)
    uf = _Find(len(idx))
    for a, b in tab.pairs:
        uf.union(a, b)
    groups: dict[int, list[int]] = {}
    for a in range(len(idx)):
        groups.setdefault(uf.find(a), []).append(a)

    parts: list[list[int]] = []
    for members in groups.values():
        if len(qs) == 1 or _q_connected(tab.restrict(members)):
            parts.append(members)
            continue
        remaining = sorted(members, key=lambda a: space.points[idx[a]])
        while remaining:
            group = [remaining[0]]
            for a in remaining[1:]:
                if _q_connected(tab.restrict(group + [a])):
                    group.append(a)
            parts.append(group)
            remaining = [a for a in remaining if a not in group]
    out = [space.subset(idx[a] for a in part) for part in parts]
    return sorted(out, key=min)
