"""Per-track components of a mapped dataset and the structures built on them.

A component is a circular run of occupied areas on one track where runs
separated by fewer than four blank areas are merged. Components on
neighbouring tracks are linked when the facing arcs on their shared circle
come within one track width; maximal chains of links are branches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DomainError
from .grid import AreaRef, GridParams, HRef, Point, encode, href, href_point

MERGE_GAP = 4


@dataclass(frozen=True, order=True)
class ComponentInterval:
    """Occupied areas ``lo..hi`` (circular) of track ``t``."""

    t: int
    lo: int
    hi: int
    occupied: tuple[int, ...] = field(default=(), compare=False)

    def span(self, params: GridParams) -> int:
        return (self.hi - self.lo) % params.areas_in_track(self.t) + 1

    def indices(self, params: GridParams) -> list[int]:
        size = params.areas_in_track(self.t)
        return [(self.lo + s) % size for s in range(self.span(params))]

    def wraps(self) -> bool:
        return self.hi < self.lo

    def codes(self, params: GridParams) -> tuple[int, int]:
        return (
            encode(params, AreaRef(self.t, self.lo)),
            encode(params, AreaRef(self.t, self.hi)),
        )

    def __str__(self) -> str:
        return f"C^{self.t}[{self.lo},{self.hi}]"


def components_on_track(
    params: GridParams, t: int, occupied: Iterable[int]
) -> list[ComponentInterval]:
    if t < 1:
        raise DomainError("components are defined on tracks t >= 1")
    size = params.areas_in_track(t)
    occ = sorted(set(occupied))
    for j in occ:
        if not 0 <= j < size:
            raise DomainError(f"area index {j} out of range for track {t}")
    if not occ:
        return []
    gaps = [(occ[(s + 1) % len(occ)] - occ[s] - 1) % size for s in range(len(occ))]
    if len(occ) == size:
        gaps = [0] * len(occ)
    cuts = [s for s, g in enumerate(gaps) if g >= MERGE_GAP]
    if not cuts:
        # the gap rule closes the ring
        return [ComponentInterval(t, 0, size - 1, tuple(occ))]
    out = []
    for a, b in zip(cuts, cuts[1:] + [cuts[0] + len(occ)]):
        members = [occ[s % len(occ)] for s in range(a + 1, b + 1)]
        out.append(ComponentInterval(t, members[0], members[-1], tuple(sorted(members))))
    return sorted(out)


def components_by_track(
    params: GridParams, cells: Iterable[AreaRef]
) -> dict[int, list[ComponentInterval]]:
    per: dict[int, set[int]] = {}
    for c in cells:
        if c.t == 0:
            continue
        per.setdefault(c.t, set()).add(c.j)
    return {t: components_on_track(params, t, per[t]) for t in sorted(per)}


# -- boundary points and arcs ---------------------------------------------------


def _unwrapped(params: GridParams, c: ComponentInterval) -> tuple[int, int]:
    size = params.areas_in_track(c.t)
    hi = c.hi if c.hi >= c.lo else c.hi + size
    return c.lo, hi


def upper_arc(params: GridParams, c: ComponentInterval) -> tuple[int, int]:
    """``(start, steps)`` of the component's arc on the circle of radius ``tr``.

    ``start`` indexes ``H^t``; the arc runs ``steps`` dividing points CCW.
    """
    lo, hi = _unwrapped(params, c)
    t = c.t
    i, m = divmod(lo, 2 * t - 1)
    us = i * t + (m + 1) // 2
    i, m = divmod(hi, 2 * t - 1)
    ue = i * t + m // 2 + 1
    return us, ue - us


def lower_arc(params: GridParams, c: ComponentInterval) -> tuple[int, int]:
    """``(start, steps)`` of the component's arc on the circle of radius ``(t-1)r``."""
    lo, hi = _unwrapped(params, c)
    t = c.t
    if t == 1:
        return 0, 0
    i, m = divmod(lo, 2 * t - 1)
    ls = i * (t - 1) + m // 2
    i, m = divmod(hi, 2 * t - 1)
    le = i * (t - 1) + (m + 1) // 2
    return ls, le - ls


@dataclass(frozen=True)
class BoundaryPoints:
    us: HRef
    ue: HRef
    ls: HRef
    le: HRef

    def points(self, params: GridParams) -> dict[str, Point]:
        return {k: href_point(params, getattr(self, k)) for k in ("us", "ue", "ls", "le")}


def boundary_points(params: GridParams, c: ComponentInterval) -> BoundaryPoints:
    if c.t < 1:
        raise DomainError("boundary points need a track t >= 1")
    us, up = upper_arc(params, c)
    ls, low = lower_arc(params, c)
    return BoundaryPoints(
        href(params, c.t, us),
        href(params, c.t, us + up),
        href(params, c.t - 1, ls),
        href(params, c.t - 1, ls + low),
    )


# -- adjacency and branches ----------------------------------------------------


def arc_gap(ring: int, a: int, la: int, b: int, lb: int) -> int:
    """Steps between arcs ``[a, a+la]`` and ``[b, b+lb]`` on a ring; 0 if they meet."""
    if la + lb >= ring:
        return 0
    if (b - a) % ring <= la or (a - b) % ring <= lb:
        return 0
    return min((b - (a + la)) % ring, (a - (b + lb)) % ring)


def adjacent(params: GridParams, inner: ComponentInterval, outer: ComponentInterval) -> bool:
    """Whether ``outer`` (track t+1) is within reach of ``inner`` (track t).

    The facing arcs both lie on the circle of radius ``tr``; they are linked
    when the chord across the angular gap between them is at most ``r``.
    """
    if outer.t != inner.t + 1:
        return False
    t = inner.t
    a, la = upper_arc(params, inner)
    b, lb = lower_arc(params, outer)
    ring = t * params.n
    gap = arc_gap(ring, a, la, b, lb)
    chord = 2 * t * params.r * math.sin(math.pi * gap / ring)
    return chord <= params.r * (1 + 1e-9)


def child_offset(params: GridParams, parent: ComponentInterval, child: ComponentInterval) -> float:
    """Signed angular position (turns) of ``child``'s lower arc after ``parent``'s upper arc start."""
    ring = parent.t * params.n
    us, _ = upper_arc(params, parent)
    ls, _ = lower_arc(params, child)
    off = ((ls - us) % ring) / ring
    return off - 1 if off > 0.5 else off


def adjacency(
    params: GridParams, comps: Mapping[int, Sequence[ComponentInterval]]
) -> dict[ComponentInterval, list[ComponentInterval]]:
    """Children of every component, ordered along the parent's arc."""
    out: dict[ComponentInterval, list[ComponentInterval]] = {}
    for t in sorted(comps):
        for c in comps[t]:
            kids = [d for d in comps.get(t + 1, ()) if adjacent(params, c, d)]
            kids.sort(key=lambda d: (child_offset(params, c, d), d.lo))
            out[c] = kids
    return out


@dataclass(frozen=True)
class Branch:
    components: tuple[ComponentInterval, ...]

    def __post_init__(self):
        if len(self.components) < 2:
            raise DomainError("a branch links at least two components")
        ts = [c.t for c in self.components]
        if ts != list(range(ts[0], ts[0] + len(ts))):
            raise DomainError("branch components must sit on consecutive tracks")

    @property
    def t0(self) -> int:
        return self.components[0].t

    def at(self, t: int) -> ComponentInterval | None:
        k = t - self.t0
        return self.components[k] if 0 <= k < len(self.components) else None

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)


def build_branches(
    params: GridParams,
    comps: Mapping[int, Sequence[ComponentInterval]],
    adj: Mapping[ComponentInterval, Sequence[ComponentInterval]] | None = None,
) -> list[Branch]:
    """All maximal chains through the adjacency relation.

    A chain starts at a component with no parent and ends at one with no
    child. Components may belong to several branches.
    """
    if adj is None:
        adj = adjacency(params, comps)
    has_parent = {d for kids in adj.values() for d in kids}
    nodes = sorted(c for t in comps for c in comps[t])
    out: list[Branch] = []

    def walk(path: list[ComponentInterval]):
        kids = adj.get(path[-1], ())
        if not kids:
            if len(path) > 1:
                out.append(Branch(tuple(path)))
            return
        for d in kids:
            path.append(d)
            walk(path)
            path.pop()

    for c in nodes:
        if c not in has_parent:
            walk([c])
    return sorted(out, key=lambda b: [(c.t, c.lo) for c in b])


def branch_boundaries(params: GridParams, branch: Branch) -> tuple[list[Point], list[Point]]:
    """Lower boundary ``(ls, us)`` and upper boundary ``(le, ue)`` of every level."""
    lower: list[Point] = []
    upper: list[Point] = []
    for c in branch:
        b = boundary_points(params, c)
        lower += [href_point(params, b.ls), href_point(params, b.us)]
        upper += [href_point(params, b.le), href_point(params, b.ue)]
    return lower, upper


# -- holes and anomalies ---------------------------------------------------------


@dataclass(frozen=True)
class Hole:
    branches: tuple[int, int]
    start: ComponentInterval
    end: ComponentInterval
    # inner components of the clockwise and counter-clockwise side
    cw_side: tuple[ComponentInterval, ...]
    ccw_side: tuple[ComponentInterval, ...]
    polygon: tuple[Point, ...]

    @property
    def key(self):
        return (self.start, self.end, frozenset((self.cw_side, self.ccw_side)))


def _signed_area(poly: Sequence[Point]) -> float:
    s = 0.0
    for (x0, y0), (x1, y1) in zip(poly, list(poly[1:]) + [poly[0]]):
        s += x0 * y1 - x1 * y0
    return s / 2


def _hole_polygon(params: GridParams, cw: Sequence[ComponentInterval], ccw: Sequence[ComponentInterval]):
    pts: list[Point] = []
    for c in cw:
        b = boundary_points(params, c)
        pts += [href_point(params, b.le), href_point(params, b.ue)]
    for c in reversed(ccw):
        b = boundary_points(params, c)
        pts += [href_point(params, b.us), href_point(params, b.ls)]
    if _signed_area(pts) < 0:
        pts.reverse()
    return tuple(pts)


def find_holes(params: GridParams, branches: Sequence[Branch]) -> list[Hole]:
    """Holes enclosed by pairs of branches.

    Two branches enclose a hole between two levels where they share a
    component when, on every level strictly between, their components
    differ and there is at least one such level.
    """
    seen = set()
    out: list[Hole] = []
    for a in range(len(branches)):
        for b in range(a + 1, len(branches)):
            ba, bb = branches[a], branches[b]
            lo = max(ba.t0, bb.t0)
            hi = min(ba.t0 + len(ba), bb.t0 + len(bb)) - 1
            shared = [t for t in range(lo, hi + 1) if ba.at(t) == bb.at(t)]
            for k1, k2 in zip(shared, shared[1:]):
                if k2 - k1 < 2:
                    continue
                side_a = tuple(ba.at(t) for t in range(k1 + 1, k2))
                side_b = tuple(bb.at(t) for t in range(k1 + 1, k2))
                start = ba.at(k1)
                oa = child_offset(params, start, side_a[0])
                ob = child_offset(params, start, side_b[0])
                cw, ccw = (side_a, side_b) if (oa, side_a[0].lo) < (ob, side_b[0].lo) else (side_b, side_a)
                hole = Hole((a, b), start, ba.at(k2), cw, ccw, _hole_polygon(params, cw, ccw))
                if hole.key in seen:
                    continue
                seen.add(hole.key)
                out.append(hole)
    return out


def find_anomalies(
    components: Iterable[ComponentInterval], branches: Sequence[Branch]
) -> list[ComponentInterval]:
    in_branch = {c for b in branches for c in b}
    return sorted(c for c in components if c not in in_branch)


# -- outer boundary ------------------------------------------------------------


def hull_boundary(params: GridParams, cells: Iterable[AreaRef]) -> list[Point]:
    """Closed outer boundary built from the outermost components' upper arcs.

    A dividing point on a component's upper arc is kept unless a component
    on a farther track covers its angle. Kept points are joined in angular
    order and the polyline is closed by repeating the first point.
    """
    comps = components_by_track(params, cells)
    if not comps:
        raise DomainError("the outer boundary of an empty dataset is undefined")
    arcs = []
    for t, cs in comps.items():
        ring = t * params.n
        for c in cs:
            us, steps = upper_arc(params, c)
            arcs.append((t, Fraction(us % ring, ring), Fraction(min(steps, ring), ring)))

    def covered(t: int, phi: Fraction) -> bool:
        return any(t2 > t and (phi - a) % 1 <= ln for t2, a, ln in arcs)

    kept: dict[tuple[Fraction, int], HRef] = {}
    for t, cs in comps.items():
        ring = t * params.n
        for c in cs:
            us, steps = upper_arc(params, c)
            for k in range(us, us + min(steps, ring - 1) + 1):
                phi = Fraction(k % ring, ring)
                if not covered(t, phi):
                    kept[(phi, -t)] = href(params, t, k)
    pts = [href_point(params, kept[key]) for key in sorted(kept)]
    return pts + pts[:1]
