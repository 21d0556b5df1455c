"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import math
import random
import subprocess
import sys
import time
from fractions import Fraction

from conftest import ACCEPTANCE_LINES
from fixtures import SAMPLE_CODES, SAMPLE_ROTATED_30, P, sample_cells, sample_points, stacked_diamonds, twin_diamonds
from oracles import exhaustive_connected, wedge_search
from test_typed_core import grid_points, in_wedge, near_wedge_edge
from typedtopo.components import build_branches, components_by_track, components_on_track, find_holes, boundary_points
from typedtopo.components import ComponentInterval as C
from typedtopo.errors import TranslationUndefined
from typedtopo.grid import AreaRef, HRef, decode, encode, metric, min_sectors, track_sequence
from typedtopo.locator import locate
from typedtopo.pseudotree import build_pseudotree, find_cycles
from typedtopo.shapes import classify_line
from typedtopo.transforms import on_codes, rotate, rotate_inverse, rotation_shift, scale_cell, translate_cell
from typedtopo.typed_core import FinitePointSpace, TypeTag, direct_closure, is_type_q_connected


def verdict(num, name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} {num}: {name}" + (f" ({detail})" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def all_cells(tmax):
    return [AreaRef(t, j) for t in range(1, tmax + 1) for j in range(P.areas_in_track(t))]


def test_criterion_01_rotation_golden():
    t0 = time.perf_counter()
    got = on_codes(P, SAMPLE_CODES, rotate, 30)
    dt = time.perf_counter() - t0
    verdict(1, "rotation by 30 deg", got == SAMPLE_ROTATED_30 and dt < 1, f"{dt:.3f} s")


def test_criterion_02_shift_per_track():
    shifts = {t: rotation_shift(P, t, 30) for t in range(2, 6)}
    verdict(2, "per-track shift 2t-1", all(s == 2 * t - 1 for t, s in shifts.items()), str(shifts))


def test_criterion_03_merge_rule():
    a = components_on_track(P, 2, [1, 2, 4, 5, 6, 7])
    b = components_on_track(P, 3, [0, 3, 4, 5, 6, 7, 12, 13, 14])
    ok = [(c.lo, c.hi) for c in a] == [(1, 7)] and [(c.lo, c.hi) for c in b] == [(0, 7), (12, 14)]
    verdict(3, "gap merge rule", ok, f"{len(a)} and {len(b)} components")


def test_criterion_04_component_intervals():
    comps = components_by_track(P, sample_cells())
    got = [c.codes(P) for t in sorted(comps) for c in comps[t]]
    want = [(12, 17), (49, 49), (54, 55), (109, 117), (204, 207)]
    verdict(4, "component intervals", got == want, str(got))


def test_criterion_05_scaling_golden():
    got = (scale_cell(P, AreaRef(4, 6), 2), scale_cell(P, AreaRef(4, 7), 2))
    verdict(5, "scaling by 2", got == (AreaRef(8, 12), AreaRef(8, 14)), str(got))


def test_criterion_06_boundary_golden():
    # six areas stay inside one sector only from track 4 on
    bad = []
    for t in range(4, 21):
        b = boundary_points(P, C(t, 0, 5))
        if (b.us, b.ue, b.ls, b.le) != (HRef(t, 0), HRef(t, 3), HRef(t - 1, 0), HRef(t - 1, 3)):
            bad.append(t)
    verdict(6, "boundary points of a six-area run", not bad, "tracks 4..20" + (f", bad {bad}" if bad else ""))


def test_criterion_07_locator_oracle():
    rng = random.Random(2024)
    t0 = time.perf_counter()
    checked = wrong = 0
    while checked < 10_000:
        rho = rng.uniform(0, 8 * P.r)
        ang = rng.uniform(0, 2 * math.pi)
        x = (rho * math.cos(ang), rho * math.sin(ang))
        want = wedge_search(P, x)
        if want is None:
            continue
        checked += 1
        wrong += locate(P, x) != want
    dt = time.perf_counter() - t0
    verdict(7, "locator vs wedge oracle", wrong == 0 and dt < 10, f"{checked} points, {wrong} wrong, {dt:.2f} s")


def test_criterion_08_connectivity_oracle():
    rng = random.Random(77)
    # (tags, max points); the enumeration grows as tags**points
    tag_sets = [
        ([("disk", 1.0, 0, 0)], 12),
        ([("left", 1.0, 0, 0), ("right", 1.0, 0, 0)], 12),
        ([("dir", 1.0, 0, 4), ("dir", 1.0, 2, 4)], 12),
        ([("dir", 1.5, 0, 12), ("dir", 1.5, 6, 12), ("dir", 1.5, 3, 12)], 7),
    ]
    fixtures = [
        ([(float(k), 0.0) for k in range(12)], tag_sets[0][0]),
        ([(float(k), 0.0) for k in range(6)] + [(float(k) + 10, 0.0) for k in range(6)], tag_sets[0][0]),
    ]
    for _ in range(80):
        tags, cap = rng.choice(tag_sets)
        m = rng.randint(2, cap)
        side = rng.uniform(1, 4) * math.sqrt(m / 6)
        pts = list({(round(rng.uniform(0, side), 3), round(rng.uniform(0, side), 3)) for _ in range(m)})
        fixtures.append((pts, tags))
    t0 = time.perf_counter()
    seen = {True: 0, False: 0}
    wrong = 0
    for pts, tags in fixtures:
        want = exhaustive_connected(pts, tags)
        if want is None:
            continue
        got = is_type_q_connected(FinitePointSpace(pts), pts, [TypeTag(*t) for t in tags])
        wrong += got != want
        seen[want] += 1
    dt = time.perf_counter() - t0
    ok = wrong == 0 and seen[True] > 0 and seen[False] > 0 and dt < 30
    verdict(8, "connectivity vs exhaustive splits", ok,
            f"{seen[True]} connected, {seen[False]} disconnected, {wrong} wrong, {dt:.2f} s")


def test_criterion_09_closure_sector():
    pts = grid_points(-5, 5, 0.05)
    got = direct_closure(FinitePointSpace(pts), [(0.0, 0.0)], TypeTag.dir(4, 7, 12))
    agree = 0
    for p in pts:
        if near_wedge_edge(*p, 30, 60, 4):
            agree += 1
        else:
            agree += (p in got) == in_wedge(*p, 30, 60, 4)
    frac = agree / len(pts)
    verdict(9, "closure of the centre is the reflected sector", frac >= 0.999, f"{frac:.5f} of {len(pts)} points")


def test_criterion_10_encoding():
    bad = sum(decode(P, encode(P, c)) != c for c in all_cells(50))
    seq = track_sequence(P, SAMPLE_CODES)
    ok = bad == 0 and seq == [1] * 4 + [4] * 3 + [9] * 8 + [16] * 3
    verdict(10, "encode/decode and track sequence", ok, f"{len(all_cells(50))} cells, {bad} bad")


def test_criterion_11_transform_properties():
    rng = random.Random(31)
    rot_bad = 0
    for _ in range(1000):
        cells = [AreaRef(t := rng.randint(1, 12), rng.randrange(P.areas_in_track(t))) for _ in range(5)]
        theta = Fraction(rng.randint(-100_000, 100_000), rng.randint(1, 1000))
        rot_bad += rotate_inverse(P, rotate(P, cells, theta), theta) != sorted(set(cells))
    cells = all_cells(10)
    tr_bad = tr_checked = 0
    for c in cells:
        for ray in range(P.n):
            for k in (1, 2, 3, 4):
                try:
                    there = translate_cell(P, c, ray, k)
                except TranslationUndefined:
                    continue
                tr_checked += 1
                tr_bad += translate_cell(P, there, ray, -k) != c
    sc_bad = sum(scale_cell(P, scale_cell(P, c, k), Fraction(1, k)) != c for c in cells for k in (1, 2, 3, 4))
    ok = rot_bad == sc_bad == tr_bad == 0 and tr_checked > 0
    verdict(11, "transform inverse laws", ok,
            f"rotate {rot_bad}/1000, translate {tr_bad}/{tr_checked}, scale {sc_bad}/{4 * len(cells)} bad")


def test_criterion_12_min_sectors():
    got = {r: min_sectors(r) for r in (0.1, 1, 4, 100)}
    verdict(12, "minimum sector count", set(got.values()) == {12}, str(got))


def test_criterion_13_holes_and_cycles():
    counts = {}
    for name, cells in (("sample", sample_cells()), ("stacked", stacked_diamonds()), ("twin", twin_diamonds())):
        comps = components_by_track(P, cells)
        counts[name] = (len(find_holes(P, build_branches(P, comps))), len(find_cycles(build_pseudotree(P, comps))))
    ok = all(h == c for h, c in counts.values()) and counts["stacked"][0] > 1 and counts["twin"][0] > 1
    verdict(13, "holes match pseudotree cycles", ok, str(counts))


def test_criterion_14_metric_axioms():
    rng = random.Random(5)
    cells = all_cells(12)
    bad = 0
    for _ in range(100_000):
        a, b, c = rng.choice(cells), rng.choice(cells), rng.choice(cells)
        ab, bc, ac = metric(P, a, b), metric(P, b, c), metric(P, a, c)
        bad += (
            metric(P, a, a) != 0
            or abs(ab - metric(P, b, a)) > 1e-9
            or (a != b and ab <= 1e-9)
            or ac > ab + bc + 1e-9
        )
    verdict(14, "metric axioms", bad == 0, f"100000 triples, {bad} bad")


def test_criterion_15_typed_lines():
    rng = random.Random(8)
    sectors = (2, 4, 8, 16, 32)
    straight_bad = bent_ok = 0
    for _ in range(200):
        ang = rng.uniform(0, 2 * math.pi)
        x0, y0 = rng.uniform(-5, 5), rng.uniform(-5, 5)
        steps = sorted(rng.uniform(0.1, 10) for _ in range(rng.randint(2, 8)))
        pts = [(x0, y0)] + [(x0 + s * math.cos(ang), y0 + s * math.sin(ang)) for s in steps]
        straight_bad += any(classify_line(pts, s) is None for s in sectors)
        # turn the last step by 15..60 degrees, wider than one sector at n'=32
        turn = math.radians(rng.uniform(15, 60)) * rng.choice((-1, 1))
        px, py = pts[-2]
        d = math.hypot(pts[-1][0] - px, pts[-1][1] - py)
        bent = pts[:-1] + [(px + d * math.cos(ang + turn), py + d * math.sin(ang + turn))]
        bent_ok += all(classify_line(bent, s) is not None for s in sectors)
    verdict(15, "typed line classification", straight_bad == bent_ok == 0,
            f"200 lines: {straight_bad} straight rejected, {bent_ok} bent accepted at every n'")


def test_criterion_16_cli_determinism(tmp_path):
    src = tmp_path / "pts.csv"
    src.write_text("x,y\n" + "".join(f"{x!r},{y!r}\n" for x, y in sample_points()))
    outputs = []
    for run in (1, 2):
        out, svg = tmp_path / f"r{run}.json", tmp_path / f"r{run}.svg"
        done = subprocess.run(
            [sys.executable, "-m", "typedtopo", "--input", str(src), "--r", "4", "--rotate", "30",
             "--curve", "x**2 + y**2 = 100", "--out", str(out), "--svg", str(svg)],
            capture_output=True,
        )
        assert done.returncode == 0, done.stderr
        outputs.append((out.read_bytes(), svg.read_bytes()))
    verdict(16, "CLI output is byte-identical", outputs[0] == outputs[1],
            f"{len(outputs[0][0])} JSON bytes, {len(outputs[0][1])} SVG bytes")
