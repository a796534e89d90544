"""The L-shape (chair) corpus: 28 unit tiles, layouts, and region rules.

The unit tile table is transcribed side-for-side from its source listing.
Two rows in that listing are internally inconsistent with the assembly the
rest of the corpus forces (the bonds and signal routes pin down the correct
values uniquely); the loader applies the reconciled values and reports the
changes through ``loader_audit``:

* X3: the ``-y`` and ``-x`` side contents are swapped as printed.  X2
  carries ``-88`` on ``+y``, so the ``88`` must face down from X3's ``-y``
  (the level-0 L could never form otherwise), and the ``-5`` belongs on
  ``-x`` where A2's ``5`` meets it in the bordered layouts.
* G4: the printed activation signal duplicates G3's.  G4's inactive ``-4``
  sits on ``-y`` and is fed by G2 across the ``-x`` seam, so the signal
  must be ``4(-x->-y)``; as printed it could never fire and assembly would
  stall before the level-1 shape completes.
"""

from __future__ import annotations

from fractions import Fraction

from .assembler import TileSystem, close_under_rotation
from .docio import parse_signal
from .engine import modify_tile
from .model import (
    ActiveTile,
    DIRECTIONS,
    TileSide,
    label_base,
    make_tile,
    validate_active_tile,
)
from .tiletypes import E, LevelExpr, Subregions, TileTypeLibrary

THETA = 2

STRENGTH = {
    **{c: 1 for c in ("1", "2", "3", "4", "5")},
    **{c: 2 for c in ("11", "22", "33", "44", "55", "66", "77", "88")},
}


def _side(text: str) -> TileSide:
    """"a b|c d" -> active {a, b}, inactive {c, d}."""
    active, _, inactive = text.partition("|")
    return TileSide(frozenset(active.split()), frozenset(inactive.split()))


# Sides in +y, +x, -y, -x order; then transmission and activation signals.
_TILE_ROWS = {
    "X1": ("", "-3", "-3", "77", "55(0->-x)", ""),
    "X2": ("-88", "-77", "-5", "-2", "55(+x->+y)", ""),
    "X3": ("|-55", "", "88", "-5", "11(0->+y) 66(0->+y)", "55(-y->+y)"),
    "G1": ("-1", "5", "-1", "4", "1(0->-x) 4(-x->-y) 5(-y->-x) 55(-y->-x)", ""),
    "G2": ("5", "-2", "4", "-2", "2(0->-y) 4(-y->+x) 5(0->-y) 55(+x->-x)", ""),
    "G3": ("1", "2", "-66", "|-4", "2(0->-y) 55(-x->+y) 55(-y->-x)", "4(+y->-x)"),
    "G4": ("3", "-66", "|-4", "2",
           "4(0->+x) 4(-x->-y) 55(-y->-x) 55(+x->-y)", "4(-x->-y)"),
    "F1": ("|4", "4", "1", "|-5 -44",
           "1(0->+y) 4(+y->-x) 55(-x->+y)", "4(+x->+y) 5(+x->-x) 44(+x->-x)"),
    "F2": ("4", "2", "|-5 -44", "|4",
           "2(0->-x) 4(-x->-y) 5(0->-x) 55(-y->+y)",
           "4(+y->-x) 5(+y->-y) 44(+y->-y)"),
    "F3": ("3", "|-44", "|4", "4",
           "3(0->-y) 5(0->-y) 55(0->-x)", "4(-x->-y) 44(-x->+x)"),
    "E0": ("-4", "", "55", "|-4 -66",
           "1(0->-x) 44(0->-x)", "4(-y->-x) 66(-y->-x)"),
    "E1": ("", "4", "5", "-4",
           "4(+x->-x) 5(+x->-x) 44(+x->-x) 55(-x->+x)", ""),
    "E2": ("5", "5", "-4", "|-4",
           "44(0->-y) 55(-x->+y) 55(-y->-x)", "4(+y->-x)"),
    "D1": ("2", "1", "-2", "-5", "5(-y->+y) 55(-y->+y)", ""),
    "D2": ("2", "-3", "-5", "3",
           "1(+x->-x) 2(+x->-x) 3(+x->-x) 5(+x->-x) 55(+x->-x)", ""),
    "D3": ("-4", "", "1", "3",
           "1(+y->-y) 2(+y->-y) 3(+y->-y) 4(0->+y) 5(+y->-y) 55(+y->-y)", ""),
    "C0": ("", "66", "|1 2 -4", "",
           "4(0->-y) 55(-y->+x)", "1(+x->-y) 2(+x->-y) 4(+x->-y)"),
    "C1": ("", "11", "-2", "|-5 -55",
           "1(+x->-x) 4(+x->-x)", "5(-y->-x) 55(-y->-x)"),
    "C2": ("22", "-3", "-5", "|-1 -2 -3",
           "5(+x->+y) 55(+x->+y)", "1(+x->-x) 2(+x->-x) 3(+x->-x)"),
    "C3": ("-1", "", "|-1 -2 -3", "33",
           "1(+y->-x) 2(+y->-x) 3(+y->-x) 5(+y->-x) 55(+y->-x)",
           "1(+y->-y) 2(+y->-y) 3(+y->-y)"),
    "C4": ("", "44", "-4", "", "4(0->-y) 5(0->-y) 55(-y->+x)", ""),
    "B1": ("", "1", "1", "-11", "1(+x->-x) 4(+x->-x)", ""),
    "B2": ("2", "2", "-22", "-5", "5(-y->+y) 55(-y->+y)", ""),
    "B3": ("3", "-33", "-5", "3",
           "1(+x->-x) 2(+x->-x) 3(+x->-x) 5(+x->-x) 55(+x->-x)", ""),
    "A0": ("", "4", "55", "|-1 -11",
           "1(0->-x) 4(0->-x) 55(+x->+x)", "1(-y->-x) 11(-y->-x)"),
    "A1": ("", "1", "5", "-1",
           "1(+x->-x) 1(-x->+x) 2(-x->+x) 3(-x->+x) 4(+x->-x) "
           "5(-x->+x) 55(-x->+x)", ""),
    "A2": ("2", "5", "-2", "-5", "5(-y->+y) 55(-y->+y)", ""),
    "A3": ("5", "-3", "-5", "3",
           "1(+x->-x) 2(+x->-x) 3(+x->-x) 5(+x->-x) 55(+x->-x)", ""),
}

#: As-printed values the loader does *not* use, kept for auditability.
RECONCILIATIONS = [
    {
        "tile": "X3",
        "field": "sides",
        "printed": {"-y": "-5", "-x": "88"},
        "applied": {"-y": "88", "-x": "-5"},
        "reason": "X2 exposes -88 upward; the 88 must face down, and the -5 "
                  "faces A2's 5 across the -x seam",
    },
    {
        "tile": "G4",
        "field": "activation",
        "printed": "4(+y->-x)",
        "applied": "4(-x->-y)",
        "reason": "the inactive -4 is on -y and is fed by G2 across -x; the "
                  "printed signal (G3's) targets a side with no inactive label",
    },
    {
        "tile": "G1",
        "field": "transmission",
        "printed": "1(0->-x) 4(-x->-y) 5(-y->-x)",
        "applied": "1(0->-x) 4(-x->-y) 5(-y->-x) 55(-y->-x)",
        "reason": "the 55 relay that activates -55 on the next corner C1 "
                  "enters the A0-type border at D3 via G1; every other tile "
                  "on that route carries 5 and 55 along identical paths, and "
                  "without the 55 hop the chain dies at G1 and no border can "
                  "start at the next level",
    },
]


def corpus_tiles() -> list:
    """The 28 rotation-class representatives, tagged ``_N``."""
    tiles = []
    for name, (py, px, my, mx, trans, act) in _TILE_ROWS.items():
        sides = {
            "+y": _side(py), "+x": _side(px), "-y": _side(my), "-x": _side(mx),
        }
        tiles.append(
            make_tile(
                f"{name}_N",
                sides,
                activation=(parse_signal(t) for t in act.split()),
                transmission=(parse_signal(t) for t in trans.split()),
            )
        )
    return tiles


def loader_audit() -> dict:
    """Structural audit of the corpus; ``ok`` must hold before any run."""
    problems = []
    tiles = corpus_tiles()
    for tile in tiles:
        problems += [f"{tile.name}: {p}" for p in validate_active_tile(tile)]
        for d in DIRECTIONS:
            for c in tile.side(d).inactive:
                if not any(
                    s.base == label_base(c) and s.dst == d
                    for s in tile.activation
                ):
                    problems.append(
                        f"{tile.name}: inactive {c} on {d} has no activation signal"
                    )
        quiescent = modify_tile(tile, {d: None for d in DIRECTIONS})
        if quiescent != tile:
            problems.append(f"{tile.name}: not a fixed point in isolation")
    closed = close_under_rotation(tiles)
    if len(tiles) != 28:
        problems.append(f"{len(tiles)} representatives, expected 28")
    if len(closed) != 112:
        problems.append(f"rotation closure has {len(closed)} tiles, expected 112")
    return {
        "ok": not problems,
        "problems": problems,
        "reconciliations": RECONCILIATIONS,
        "tiles": len(tiles),
        "closed": len(closed),
    }


def builtin_system() -> TileSystem:
    audit = loader_audit()
    if not audit["ok"]:
        raise RuntimeError("corpus integrity failure: " + "; ".join(audit["problems"]))
    return TileSystem(
        tiles=close_under_rotation(corpus_tiles()),
        strength=STRENGTH,
        theta=THETA,
        name="lshape",
    )


def short_side(level: int) -> int:
    return 3 * 2 ** level - 2


def assembly_stage(level: int) -> int:
    """Stage at which T1(level) first completes."""
    if level == 0:
        return 2
    return 9 * 2 ** (level + 1) - 6 * level - 18


# -- Tile type data -------------------------------------------------------


def _grid(rows):
    """Rows given top-first as {x: name} mappings."""
    out = {}
    height = len(rows)
    for r, row in enumerate(rows):
        for x, name in row.items():
            out[(x, height - 1 - r)] = name
    return out


LEVEL0 = {
    1: _grid([{0: "X3_N"}, {0: "X2_N", 1: "X1_N"}]),
    4: _grid([{1: "X1_E"}, {0: "X3_E", 1: "X2_E"}]),
    7: _grid([{0: "X1_S", 1: "X2_S"}, {1: "X3_S"}]),
    10: _grid([{0: "X2_W", 1: "X3_W"}, {0: "X1_W"}]),
    2: _grid([
        {0: "C1_N", 1: "A0_N"},
        {0: "A2_N", 1: "X3_N"},
        {0: "B2_N", 1: "X2_N", 2: "X1_N", 3: "D3_N"},
        {0: "C2_N", 1: "A3_N", 2: "B3_N", 3: "C3_N"},
    ]),
    5: _grid([
        {2: "D3_E", 3: "C3_E"},
        {2: "X1_E", 3: "B3_E"},
        {0: "A0_E", 1: "X3_E", 2: "X2_E", 3: "A3_E"},
        {0: "C1_E", 1: "A2_E", 2: "B2_E", 3: "C2_E"},
    ]),
    8: _grid([
        {0: "C3_S", 1: "B3_S", 2: "A3_S", 3: "C2_S"},
        {0: "D3_S", 1: "X1_S", 2: "X2_S", 3: "B2_S"},
        {2: "X3_S", 3: "A2_S"},
        {2: "A0_S", 3: "C1_S"},
    ]),
    11: _grid([
        {0: "C2_W", 1: "B2_W", 2: "A2_W", 3: "C1_W"},
        {0: "A3_W", 1: "X2_W", 2: "X3_W", 3: "A0_W"},
        {0: "B3_W", 1: "X1_W"},
        {0: "C3_W", 1: "D3_W"},
    ]),
    3: _grid([
        {0: "C0_N", 1: "E0_N"},
        {0: "G1_N", 1: "X3_N"},
        {0: "G3_N", 1: "X2_N", 2: "X1_N", 3: "F3_E"},
        {0: "C0_E", 1: "G2_N", 2: "G4_N", 3: "C0_S"},
    ]),
    6: _grid([
        {2: "F3_S", 3: "C0_W"},
        {2: "X1_E", 3: "G4_E"},
        {0: "E0_E", 1: "X3_E", 2: "X2_E", 3: "G2_E"},
        {0: "C0_E", 1: "G1_E", 2: "G3_E", 3: "C0_S"},
    ]),
    9: _grid([
        {0: "C0_N", 1: "G4_S", 2: "G2_S", 3: "C0_W"},
        {0: "F3_W", 1: "X1_S", 2: "X2_S", 3: "G3_S"},
        {2: "X3_S", 3: "G1_S"},
        {2: "E0_S", 3: "C0_S"},
    ]),
    12: _grid([
        {0: "C0_N", 1: "G3_W", 2: "G1_W", 3: "C0_W"},
        {0: "G2_W", 1: "X2_W", 2: "X3_W", 3: "E0_W"},
        {0: "G4_W", 1: "X1_W"},
        {0: "C0_E", 1: "F3_N"},
    ]),
}

PAIR_LAYOUTS = {
    "C1B1": {(0, 0): "C1_N", (1, 0): "B1_N"},
    "B2C2": {(0, 0): "C2_N", (0, 1): "B2_N"},
    "B3C3": {(0, 0): "B3_N", (1, 0): "C3_N"},
}


def _unit(name, x, y):
    return [Subregions(("unit", name), (x, y))]


def _pair(key, x, y):
    return [Subregions(("pair", key), (x, y))]


def _run(name, start, count, step, skip_after=None, skip_step=(0, 0)):
    return [Subregions(("unit", name), start, count, step, skip_after, skip_step)]


REGIONS = {
    1: [
        [Subregions(("type", 11, -1), (E(0, 0), E(3, -2)))],
        [Subregions(("type", 2, -1), (E(0, 0), E(0, 0)))],
        [Subregions(("type", 5, -1), (E(3, -2), E(0, 0)))],
        [Subregions(("type", 3, -1),
                     (LevelExpr(Fraction(3, 2), -1), LevelExpr(Fraction(3, 2), -1)))],
    ],
    2: [
        [Subregions(("type", 1, 0), (E(0, 1), E(0, 1)))],
        _unit("A0_N", E(3, -2), E(6, -3)),
        _run("A1_N", (E(0, 2), E(6, -3)), E(3, -4), (1, 0)),
        _pair("C1B1", E(0, 0), E(6, -3)),
        _run("A2_N", (E(0, 0), E(0, 2)), E(6, -6), (0, 1), E(3, -3), (0, 2)),
        _unit("D1_N", E(0, 0), E(3, -1)),
        _pair("B2C2", E(0, 0), E(0, 0)),
        _run("A3_N", (E(0, 1), E(0, 0)), E(6, -6), (1, 0), E(3, -3), (2, 0)),
        _unit("D2_N", E(3, -2), E(0, 0)),
        _pair("B3C3", E(6, -4), E(0, 0)),
        _run("A1_W", (E(6, -3), E(0, 1)), E(3, -3), (0, 1)),
        _unit("D3_N", E(6, -3), E(3, -2)),
    ],
    3: [
        [Subregions(("type", 1, 0), (E(0, 1), E(0, 1)))],
        _unit("E0_N", E(3, -2), E(6, -3)),
        _run("E1_N", (E(0, 2), E(6, -3)), E(3, -4), (1, 0)),
        _unit("F1_N", E(0, 1), E(6, -3)),
        _unit("C4_N", E(0, 0), E(6, -3)),
        _run("E1_E", (E(0, 0), E(0, 2)), E(6, -7), (0, 1), E(3, -4), (0, 3)),
        _unit("F1_E", E(0, 0), E(3, -1)),
        _unit("E2_N", E(0, 0), E(3, -2)),
        _unit("F2_N", E(0, 0), E(0, 1)),
        _unit("C4_E", E(0, 0), E(0, 0)),
        _run("E1_S", (E(0, 1), E(0, 0)), E(6, -7), (1, 0), E(3, -3), (3, 0)),
        _unit("F2_E", E(3, -2), E(0, 0)),
        _unit("E2_E", E(3, -1), E(0, 0)),
        _unit("F3_N", E(6, -4), E(0, 0)),
        _unit("C4_S", E(6, -3), E(0, 0)),
        _run("E1_W", (E(6, -3), E(0, 1)), E(3, -3), (0, 1)),
        _unit("F3_E", E(6, -3), E(3, -2)),
    ],
}

RHO = {i: (4, 12, 17)[(i - 1) % 3] for i in range(1, 13)}


def eta(i: int, j: int, level: int) -> int:
    mod = (i - 1) % 3 + 1
    s = 3 * 2 ** level
    if mod == 1:
        return 1
    if mod == 2:
        return {3: s - 4, 5: 2 * s - 6, 8: 2 * s - 6, 11: s - 3}.get(j, 1)
    return {3: s - 4, 6: 2 * s - 7, 11: 2 * s - 7, 16: s - 3}.get(j, 1)


def tiletype_library() -> TileTypeLibrary:
    return TileTypeLibrary(LEVEL0, REGIONS, eta, RHO, PAIR_LAYOUTS)


# -- aperiodicity markers --------------------------------------------------


def _base_name(tile: ActiveTile) -> str:
    return tile.name.rsplit("_", 1)[0]


def _has_active(tile: ActiveTile, label: str) -> bool:
    return any(label in tile.side(d).active for d in DIRECTIONS)


def aperiodicity_scan(cells: dict) -> dict:
    """Locate the marked C2/C3 pair and the A3 run that separates them.

    On the completed L-shape, exactly one outermost (boundary) C2 and one
    outermost C3 carry an active ``-2``; the number of A3 tiles strictly
    between them encodes the level.
    """

    def on_boundary(pos):
        x, y = pos
        return any(
            (x + dx, y + dy) not in cells
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
        )

    marked = {"C2": [], "C3": []}
    for pos, tile in cells.items():
        base = _base_name(tile)
        if base in marked and on_boundary(pos) and _has_active(tile, "-2"):
            marked[base].append(pos)
    report = {
        "c2": marked["C2"],
        "c3": marked["C3"],
        "unique": len(marked["C2"]) == 1 and len(marked["C3"]) == 1,
        "a3_between": None,
    }
    if report["unique"]:
        (x1, y1), (x2, y2) = marked["C2"][0], marked["C3"][0]
        count = 0
        if y1 == y2:
            for x in range(min(x1, x2) + 1, max(x1, x2)):
                if _base_name(cells[(x, y1)]) == "A3":
                    count += 1
        elif x1 == x2:
            for y in range(min(y1, y2) + 1, max(y1, y2)):
                if _base_name(cells[(x1, y)]) == "A3":
                    count += 1
        else:
            count = None  # not collinear: leave as a visible anomaly
        report["a3_between"] = count
    return report
