"""Acceptance gate: one test (and one pass/fail line under ``pytest -v``)
per criterion.  Timing tolerances are stated inline: the two-stage bootstrap
must finish inside 5 seconds and the full 42-stage run inside 600 seconds,
both measured as wall time on the host running the suite.
"""

import random
import time

from atas import assembler, lshape
from atas.assembly import (
    canonical_key,
    min_cut_weight,
    min_cut_weight_bruteforce,
    normalize,
    rotate_cells,
)
from atas.docio import render_ascii
from atas.engine import apply_f, potential
from atas.model import rotate_ccw

from conftest import random_placement, relay_demo_cells

T1_TYPES = {1, 4, 7, 10}


def rotation_class_key(cells):
    keys = []
    out = cells
    for _ in range(4):
        keys.append(canonical_key(out))
        out = rotate_cells(out)
    return min(keys)


def exact_members_by_stage(result, library):
    """{stage: [(i, level), ...]} for exactly-matching members."""
    out = {}
    for stage, members in enumerate(result.stages):
        for m in members:
            kind, ident = library.classify(m.name_grid())
            if kind == "exact":
                out.setdefault(stage, []).append(ident)
    return out


def test_criterion_1_bootstrap_stages(system, library):
    """Stage 1 adds exactly 7 classes mod rotation; stage 2 only T1(0); <5s."""
    t0 = time.monotonic()
    result = assembler.run(system, stages=2)
    elapsed = time.monotonic() - t0
    assert elapsed < 5.0, f"two-stage bootstrap took {elapsed:.2f}s (limit 5s)"
    stage1 = {rotation_class_key(m.cells) for m in result.stages[1]}
    assert len(stage1) == 7, f"stage 1 has {len(stage1)} classes mod rotation"
    stage2 = {rotation_class_key(m.cells) for m in result.stages[2]}
    assert len(stage2) == 1, f"stage 2 has {len(stage2)} classes mod rotation"
    for m in result.stages[2]:
        kind, (i, level) = library.classify(m.name_grid())
        assert kind == "exact" and level == 0 and i in T1_TYPES
    print(f"criterion 1: PASS ({elapsed:.2f}s)")


def test_criterion_2_milestone_stages(full_run, library):
    """T1(1) first appears at stage 12, T1(2) at stage 42; run <600s, no caps."""
    result, elapsed = full_run
    assert elapsed < 600.0, f"42-stage run took {elapsed:.1f}s (limit 600s)"
    assert result.truncated_by == "", (
        f"member/budget cap bound the run: {result.truncated_by}"
    )
    exact = exact_members_by_stage(result, library)
    first_l1 = min(s for s, ids in exact.items() if (1, 1) in ids)
    first_l2 = min(s for s, ids in exact.items() if (1, 2) in ids)
    assert first_l1 == 12, f"T1(1) first at stage {first_l1}, expected 12"
    assert first_l2 == 42, f"T1(2) first at stage {first_l2}, expected 42"
    print(f"criterion 2: PASS ({elapsed:.1f}s for 42 stages)")


def _arm_and_long(cells):
    xs = [x for x, _ in cells]
    ys = [y for _, y in cells]
    w, h = max(xs) + 1, max(ys) + 1
    full_cols = sum(
        1 for x in range(w) if all((x, y) in cells for y in range(h))
    )
    return full_cols, w


def test_criterion_3_footprints(library):
    """T1(l) measures s x 2s with s = 3*2^l - 2; bordered types (s+1) x (2s+2)."""
    for level in (0, 1, 2):
        s = 3 * 2**level - 2
        assert _arm_and_long(library.instantiate(1, level)) == (s, 2 * s)
    for i in (2, 3):
        for level in (0, 1):
            s = 3 * 2**level - 2
            assert _arm_and_long(library.instantiate(i, level)) == (
                s + 1,
                2 * s + 2,
            )
    print("criterion 3: PASS")


def test_criterion_4_region_verification(library):
    for i, levels in ((1, (0, 1, 2)), (2, (0, 1)), (3, (0, 1))):
        for level in levels:
            report = library.verify_regions(i, level)
            assert report["ok"], (i, level, report["problems"])
    assert lshape.eta(2, 3, 1) == 2
    assert lshape.eta(2, 5, 1) == 6
    print("criterion 4: PASS")


def test_criterion_5_no_unknown_members(full_run, library):
    result, _ = full_run
    total = 0
    for members in result.stages:
        for m in members:
            kind, _ = library.classify(m.name_grid())
            assert kind != "unknown", render_ascii(m.cells)
            total += 1
    print(f"criterion 5: PASS ({total} members classified)")


def test_criterion_6_relay_example_completes_in_two_steps():
    cells = relay_demo_cells()
    steps = 0
    print("initial state:")
    print(render_ascii(cells))
    while True:
        cells, changed = apply_f(cells)
        if not changed:
            break
        steps += 1
        center = cells[(0, 0)]
        print(f"after iteration {steps}: +x side = "
              f"(active={sorted(center.side('+x').active)}, "
              f"inactive={sorted(center.side('+x').inactive)}), "
              f"signals={sorted(map(str, center.transmission))}")
    assert steps == 2, f"completion took {steps} iterations, expected 2"
    final = cells[(0, 0)]
    assert final.side("+x").active == frozenset({"g"})
    assert final.side("+x").inactive == frozenset()
    print("criterion 6: PASS")


def test_criterion_7_property_suites(system):
    """>=1000 seeded random cases per property, or full enumeration."""
    tiles = list(system.tiles)
    rng = random.Random(20260830)
    for _ in range(1000):
        cells = random_placement(rng, tiles)
        base, changed = apply_f(cells)
        items = list(cells.items())
        rng.shuffle(items)
        assert apply_f(dict(items))[0] == base  # order independence
        prev = potential(cells)
        cur_cells = cells
        while True:
            cur_cells, ch = apply_f(cur_cells)
            if not ch:
                break
            cur = potential(cur_cells)
            assert cur < prev  # strict decrease
            prev = cur
    for _ in range(1000):
        cells = normalize(random_placement(rng, tiles))
        assert normalize(cells) == cells  # idempotence
    result = assembler.run(system, stages=6)
    assert all(len(m.cells) <= 12 for m in result.members.values())
    for m in result.members.values():  # exhaustive min-cut oracle comparison
        assert min_cut_weight(m.cells, system.strength) == (
            min_cut_weight_bruteforce(m.cells, system.strength)
        )
    assert len(tiles) == 112
    for tile in tiles:  # exhaustive r^4 = id
        out = tile
        for _ in range(4):
            out = rotate_ccw(out)
        assert out.content_key == tile.content_key
    print("criterion 7: PASS (1000 random cases per property; "
          f"{len(result.members)} members and 112 tiles enumerated)")


def test_criterion_8_self_similarity(library):
    ok, ratios = library.check_self_similar(1, 2)
    assert ok and [str(r) for r in ratios] == ["4", "5/2"]
    strong, witnesses = library.check_strongly_self_similar((1,))
    assert strong and witnesses == []
    strong_all, witnesses = library.check_strongly_self_similar(
        tuple(range(1, 13))
    )
    assert not strong_all
    stretching = [w for w in witnesses if w[3]]
    assert stretching, "expected a stretching-region witness"
    print(f"criterion 8: PASS (stretching witness {stretching[0]})")


def test_criterion_9_aperiodicity_markers(full_run, library):
    result, _ = full_run
    separations = {}
    for level, stage in ((1, 12), (2, 42)):
        member = next(
            m
            for m in result.stages[stage]
            if library.classify(m.name_grid()) == ("exact", (1, level))
        )
        scan = lshape.aperiodicity_scan(member.cells)
        assert scan["unique"], f"level {level}: markers not unique"
        separations[level] = scan["a3_between"]
    assert separations[1] == 1 and separations[2] == 6
    assert separations[2] > separations[1]
    print(f"criterion 9: PASS (separations {separations})")
