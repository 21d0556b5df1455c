import math
import random

import pytest

from typedtopo.errors import DomainError
from typedtopo.grid import GridParams, representative
from typedtopo.shapes import (
    DirectionStep,
    classify_line,
    decompose_polyline,
    directions,
    pair_direction,
    sector_of,
)

SECTORS = [2, 4, 8, 16, 32]


class TestPairDirection:
    def test_east(self):
        assert pair_direction((0, 0), (1, 0), 8) == DirectionStep(1.0, 0, 8)

    def test_north(self):
        assert pair_direction((0, 0), (0, 2), 8) == DirectionStep(2.0, 2, 8)

    def test_west(self):
        assert pair_direction((0, 0), (-1, 0), 4) == DirectionStep(1.0, 2, 4)

    def test_coincident(self):
        with pytest.raises(DomainError):
            pair_direction((1, 1), (1, 1), 4)

    def test_too_few_sectors(self):
        with pytest.raises(DomainError):
            pair_direction((0, 0), (1, 0), 1)

    def test_boundary_goes_to_starting_sector(self):
        assert sector_of(45.0, 8) == 1
        assert sector_of(45.0 - 1e-12, 8) == 1
        assert sector_of(44.9, 8) == 0
        assert sector_of(359.99999999999, 8) == 0


class TestClassifyLine:
    def test_x_axis_representatives(self):
        p = GridParams(4, 12)
        pts = [(x, 0.0) for x in range(-3, 10)]
        for s in SECTORS:
            assert classify_line(pts, s) == 0
        # representatives of S^t_0 are not collinear with the centre in general
        reps = [representative(p, t, 0) for t in (1, 2, 3)]
        assert classify_line(reps, 2) == 0

    def test_bend(self):
        assert classify_line([(0, 0), (1, 0), (2, 1)], 8) is None
        assert directions([(0, 0), (1, 0), (2, 1)], 8) == [0, 1]

    def test_diagonal(self):
        assert classify_line([(0, 0), (1, 1), (2, 2)], 8) == 1

    def test_too_short(self):
        with pytest.raises(DomainError):
            classify_line([(0, 0)], 4)

    def test_collinear_all_partitions(self):
        rng = random.Random(1)
        for _ in range(200):
            ang = rng.uniform(0, 2 * math.pi)
            x0, y0 = rng.uniform(-5, 5), rng.uniform(-5, 5)
            ts = sorted(rng.uniform(0, 10) for _ in range(6))
            pts = [(x0 + t * math.cos(ang), y0 + t * math.sin(ang)) for t in ts if t > 0]
            pts = [(x0, y0)] + pts
            for s in SECTORS:
                assert classify_line(pts, s) is not None

    def test_refinement_keeps_failure(self):
        # steps at 10 and 80 degrees: split at n'=4 (90 deg boundary is not between them) only later
        pts = [(0, 0), (math.cos(math.radians(10)), math.sin(math.radians(10)))]
        pts.append((pts[1][0] + math.cos(math.radians(50)), pts[1][1] + math.sin(math.radians(50))))
        assert classify_line(pts, 4) == 0
        assert classify_line(pts, 8) is None
        for s in (16, 32, 64):
            assert classify_line(pts, s) is None


class TestDecompose:
    def test_l_shape(self):
        sides, vertices = decompose_polyline([(0, 0), (1, 0), (2, 0), (2, 1), (2, 2)], 4)
        assert [s.sector for s in sides] == [0, 1]
        assert vertices == [(2, 0)]
        assert sides[0].points[-1] == sides[1].points[0] == (2, 0)

    def test_straight(self):
        sides, vertices = decompose_polyline([(0, 0), (1, 1), (2, 2), (3, 3)], 8)
        assert len(sides) == 1 and vertices == []

    def test_square(self):
        sq = [(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]
        sides, vertices = decompose_polyline(sq, 4)
        assert [s.sector for s in sides] == [0, 1, 2, 3]
        assert vertices == [(1, 0), (1, 1), (0, 1)]

    def test_collinear_insertions_keep_count(self):
        base = [(0, 0), (2, 0), (2, 2), (0, 2)]
        more = [(0, 0), (1, 0), (2, 0), (2, 0.5), (2, 2), (1, 2), (0, 2)]
        assert len(decompose_polyline(base, 8)[0]) == len(decompose_polyline(more, 8)[0]) == 3

    def test_too_short(self):
        with pytest.raises(DomainError):
            decompose_polyline([(0, 0), (1, 0)], 4)
