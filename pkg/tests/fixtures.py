"""Shared datasets for the test-suite."""

from __future__ import annotations

from typedtopo.components import ComponentInterval
from typedtopo.grid import AreaRef, GridParams, decode, representative, encode

P = GridParams(4, 12)

# the "d"-shaped dataset: occupied cells listed by integer code
SAMPLE_CODES = [12, 14, 15, 17, 49, 54, 55, 109, 110, 111, 112, 113, 114, 115, 117, 204, 205, 207]
SAMPLE_ROTATED_30 = [15, 17, 18, 20, 54, 59, 60, 116, 117, 118, 119, 120, 121, 122, 124, 213, 214, 216]


def sample_cells(params: GridParams = P) -> list[AreaRef]:
    return [decode(params, c) for c in SAMPLE_CODES]


def sample_points(params: GridParams = P) -> list[tuple[float, float]]:
    return [representative(params, c.t, c.j) for c in sample_cells(params)]


def _diamond() -> list[AreaRef]:
    return (
        [AreaRef(2, j) for j in range(6)]
        + [AreaRef(3, 1), AreaRef(3, 6), AreaRef(3, 7)]
        + [AreaRef(4, j) for j in range(1, 10)]
    )


def stacked_diamonds() -> list[AreaRef]:
    """Split at track 3, rejoin at 4, split again at 5, rejoin at 6: two holes."""
    return (
        _diamond()
        + [AreaRef(5, j) for j in (2, 3, 10, 11)]
        + [AreaRef(6, j) for j in range(2, 14)]
    )


def twin_diamonds(params: GridParams = P) -> list[AreaRef]:
    """Two separate one-hole structures half a turn apart, plus an isolated cell."""
    from typedtopo.transforms import rotate

    base = _diamond()
    return sorted(set(base) | set(rotate(params, base, 180)) | {AreaRef(5, 85)}, key=lambda c: encode(params, c))


def shared_layout():
    """Abstract components and links laid out to exercise shared children across levels.

    Returns ``(names, comps, adj)``. N8, N9 share N5; N12, N13 share N4;
    N10, N11 share N6 and close the cycle N7-N10-N6-N11; N1, N2, N3 are
    isolated on tracks 1, 3 and 5.
    """
    C = ComponentInterval
    names = {
        "N8": C(1, 0, 1), "N9": C(1, 3, 4), "N1": C(1, 8, 8),
        "N5": C(2, 0, 2), "N12": C(2, 10, 12), "N13": C(2, 20, 22),
        "N7": C(3, 0, 1), "N4": C(3, 20, 22), "N2": C(3, 40, 40),
        "N10": C(4, 0, 1), "N11": C(4, 5, 6),
        "N6": C(5, 0, 2), "N3": C(5, 50, 50),
    }
    comps: dict[int, list[ComponentInterval]] = {}
    for c in names.values():
        comps.setdefault(c.t, []).append(c)
    for t in comps:
        comps[t].sort()
    links = {
        "N8": ["N5"], "N9": ["N5"],
        "N12": ["N4"], "N13": ["N4"],
        "N5": ["N7"],
        "N7": ["N10", "N11"],
        "N10": ["N6"], "N11": ["N6"],
    }
    adj = {c: [] for c in names.values()}
    for a, kids in links.items():
        adj[names[a]] = [names[k] for k in kids]
    return names, comps, adj
