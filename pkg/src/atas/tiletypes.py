"""Recursive Tile types: regions, subregions, similarity and classification.

A Tile type is a level-indexed family of assemblies.  Level 0 is an
explicit layout; level ``l >= 1`` is the disjoint union of regions, each a
run of subregions placed by affine-in-``2**l`` offset expressions.  A
subregion is a translated copy of a unit tile, a fixed two-tile assembly,
or another Tile type at a shifted level.

Everything here operates on *name grids* -- ``{(x, y): "A1_N"}`` mappings
-- which identify the seed tile and rotation tag at each cell.  Geometric
similarity compares rectilinear boundary polygons exactly (turn sequences
plus Fraction edge ratios).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import ROTATION_TAGS


@dataclass(frozen=True)
class LevelExpr:
    """The value ``coef * 2**l + const`` as a function of the level.

    ``coef`` may be a Fraction (for half-step offsets); the result must
    still be an integer at every level it is evaluated at.
    """

    coef: object = 0
    const: int = 0

    def __call__(self, level: int) -> int:
        value = self.coef * 2 ** level + self.const
        if value != int(value):
            raise ValueError(f"{self} is not integral at level {level}")
        return int(value)

    def grows(self) -> bool:
        return self.coef > 0


E = LevelExpr
ONE = E(0, 1)


@dataclass(frozen=True)
class Subregions:
    """One region's worth of subregions.

    ``content`` is ("type", q, level_delta), ("unit", name) or
    ("pair", key); ``start`` is the offset of the first subregion; later
    ones advance by ``step``, except after index ``skip_after`` where
    ``skip_step`` is used instead (this hops over interleaved single-tile
    regions).
    """

    content: tuple
    start: tuple  # (LevelExpr, LevelExpr)
    count: LevelExpr = ONE
    step: tuple = (0, 0)
    skip_after: LevelExpr = None
    skip_step: tuple = (0, 0)

    def offsets(self, level: int):
        x, y = self.start[0](level), self.start[1](level)
        n = self.count(level)
        skip = self.skip_after(level) if self.skip_after is not None else None
        for k in range(1, n + 1):
            yield (x, y)
            dx, dy = self.skip_step if k == skip else self.step
            x, y = x + dx, y + dy


def rotate_name(name: str) -> str:
    stem, _, tag = name.rpartition("_")
    return f"{stem}_{ROTATION_TAGS[(ROTATION_TAGS.index(tag) + 1) % 4]}"


def rotate_grid(grid: dict) -> dict:
    """Quarter-turn CCW of a name grid, renormalized to the origin."""
    cells = {(-y, x): rotate_name(n) for (x, y), n in grid.items()}
    mx = min(x for x, _ in cells)
    my = min(y for _, y in cells)
    return {(x - mx, y - my): n for (x, y), n in cells.items()}


class TileTypeLibrary:
    """The recursive set: explicit level-0 layouts plus region rules.

    Region rules are given for the rotational representatives (here types
    1, 2 and 3); type ``base + 3*k`` is ``k`` quarter turns of type
    ``base``.  ``eta`` maps (type index, region number, level) to the
    expected subregion count.
    """

    def __init__(self, level0: dict, regions: dict, eta, rho: dict, pairs: dict):
        self.level0 = level0
        self.regions = regions
        self.eta = eta
        self.rho = rho
        self.pairs = pairs
        self.types = sorted(level0)
        self._cache = {}

    # -- instantiation -------------------------------------------------

    def _subregion_grid(self, content, level: int) -> dict:
        kind = content[0]
        if kind == "unit":
            return {(0, 0): content[1]}
        if kind == "pair":
            return dict(self.pairs[content[1]])
        _, q, delta = content
        return self.instantiate(q, level + delta)

    def instantiate(self, i: int, level: int) -> dict:
        """Name grid of T_i(level), anchored at the origin."""
        key = (i, level)
        if key in self._cache:
            return self._cache[key]
        if level == 0:
            grid = dict(self.level0[i])
        elif i in self.regions:
            grid = {}
            for region in self.regions[i]:
                for sub in region:
                    sub_grid = self._subregion_grid(sub.content, level)
                    for ox, oy in sub.offsets(level):
                        for (x, y), name in sub_grid.items():
                            pos = (x + ox, y + oy)
                            if pos in grid:
                                raise ValueError(
                                    f"T_{i}({level}): overlap at {pos}"
                                )
                            grid[pos] = name
        else:
            base = (i - 1) % 3 + 1
            grid = self.instantiate(base, level)
            for _ in range((i - base) // 3):
                grid = rotate_grid(grid)
        self._cache[key] = grid
        return grid

    # -- verification ---------------------------------------------------

    def expected_domain(self, i: int, level: int) -> set:
        """The L-shaped footprint T_i(level) must cover."""
        dom = set(self.instantiate(1, level))
        long0 = max(x for x, _ in dom) + 1
        # Bordered types add a one-tile ring: arm+1, long side +2.
        if (i - 1) % 3 != 0:
            long0 += 2
        arm = long0 // 2
        cells = {
            (x, y)
            for x in range(long0)
            for y in range(long0)
            if x < arm or y < arm
        }
        base = (i - 1) % 3 + 1
        grid = cells
        for _ in range((i - base) // 3):
            rotated = {(-y, x) for x, y in grid}
            mx = min(x for x, _ in rotated)
            my = min(y for _, y in rotated)
            grid = {(x - mx, y - my) for x, y in rotated}
        return grid

    def verify_regions(self, i: int, level: int) -> dict:
        """Check region disjointness, coverage and subregion counts.

        Returns a report dict with ``ok`` and per-region details.
        """
        report = {"type": i, "level": level, "ok": True, "regions": [],
                  "problems": []}
        if level == 0:
            dom = set(self.level0[i])
            expected = self.expected_domain(i, 0)
            if dom != expected:
                report["ok"] = False
                report["problems"].append("level-0 layout does not cover footprint")
            return report
        seen = {}
        for j, region in enumerate(self.regions[i], start=1):
            placed = 0
            classes = set()
            for sub in region:
                sub_grid = self._subregion_grid(sub.content, level)
                classes.add(frozenset(sub_grid.items()))
                for ox, oy in sub.offsets(level):
                    placed += 1
                    for (x, y) in sub_grid:
                        pos = (x + ox, y + oy)
                        if pos in seen:
                            report["ok"] = False
                            report["problems"].append(
                                f"region {j} overlaps region {seen[pos]} at {pos}"
                            )
                        seen[pos] = j
            expected_count = self.eta(i, j, level)
            entry = {"region": j, "subregions": placed, "expected": expected_count}
            if placed != expected_count:
                report["ok"] = False
                report["problems"].append(
                    f"region {j}: {placed} subregions, table says {expected_count}"
                )
            if len(classes) != 1:
                report["ok"] = False
                report["problems"].append(f"region {j}: mixed subregion classes")
            report["regions"].append(entry)
        if len(report["regions"]) != self.rho[i]:
            report["ok"] = False
            report["problems"].append(
                f"{len(report['regions'])} regions, rho says {self.rho[i]}"
            )
        expected = self.expected_domain(i, level)
        if set(seen) != expected:
            report["ok"] = False
            report["problems"].append("regions do not tile the footprint")
        return report

    # -- similarity ------------------------------------------------------

    def check_self_similar(self, i: int, max_level: int):
        """Similarity of consecutive-level domains, with scale ratios."""
        ratios = []
        for level in range(max_level):
            a = set(self.instantiate(i, level))
            b = set(self.instantiate(i, level + 1))
            r = similarity_ratio(a, b)
            if r is None:
                return False, ratios
            ratios.append(r)
        return True, ratios

    def check_strongly_self_similar(self, subset, levels=(1, 2)):
        """Whether every region of every subset member is similar to a
        member's shape.  Returns (ok, witnesses); witnesses are
        (type, region, level, stretching?) for the failures."""
        shapes = [set(self.instantiate(q, 1)) for q in subset]
        witnesses = []
        ok = True
        for i in subset:
            base = (i - 1) % 3 + 1
            for j, region in enumerate(self.regions[base], start=1):
                stretching = any(sub.count.grows() for sub in region)
                for level in levels:
                    dom = set()
                    for sub in region:
                        sub_grid = self._subregion_grid(sub.content, level)
                        for ox, oy in sub.offsets(level):
                            dom |= {(x + ox, y + oy) for (x, y) in sub_grid}
                    if not any(similarity_ratio(dom, s) is not None for s in shapes):
                        ok = False
                        witnesses.append((i, j, level, stretching))
        return ok, witnesses

    # -- classification --------------------------------------------------

    def classify(self, name_grid: dict, max_level: int = 2):
        """Match an assembled name grid against the instantiated types.

        Returns ("seed", name), ("exact", (i, level)),
        ("intermediate", (i, level)) or ("unknown", None).
        """
        if len(name_grid) == 1:
            return ("seed", next(iter(name_grid.values())))
        grid = _normalize_grid(name_grid)
        for level in range(max_level + 1):
            for i in self.types:
                target = self.instantiate(i, level)
                verdict = _match(grid, target)
                if verdict == "exact":
                    return ("exact", (i, level))
                if verdict == "sub":
                    return ("intermediate", (i, level))
        return ("unknown", None)


def _normalize_grid(grid: dict) -> dict:
    mx = min(x for x, _ in grid)
    my = min(y for _, y in grid)
    if mx == 0 and my == 0:
        return dict(grid)
    return {(x - mx, y - my): n for (x, y), n in grid.items()}


def _match(grid: dict, target: dict):
    """"exact", "sub" (strict subgrid under some translation) or None."""
    if len(grid) > len(target):
        return None
    if len(grid) == len(target) and _normalize_grid(target) == grid:
        return "exact"
    # Anchor on the rarest name in the candidate to limit translations.
    counts = {}
    for n in grid.values():
        counts[n] = counts.get(n, 0) + 1
    rare = min(grid, key=lambda p: (counts[grid[p]], p))
    rare_name = grid[rare]
    items = list(grid.items())
    for (tx, ty), name in target.items():
        if name != rare_name:
            continue
        ox, oy = tx - rare[0], ty - rare[1]
        if all(target.get((x + ox, y + oy)) == n for (x, y), n in items):
            return "sub"
    return None


# -- geometric similarity ----------------------------------------------


def boundary_polygon(cells: set):
    """Edge lengths and turns of the boundary of a union of unit squares.

    Returns a list of (length, turn) pairs walking the outer boundary
    counter-clockwise, or None when the region is empty, disconnected or
    has holes (not a simple polygon).
    """
    if not cells:
        return None
    # Connectivity check.
    stack = [next(iter(cells))]
    seen = {stack[0]}
    while stack:
        x, y = stack.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if seen != cells:
        return None
    # Directed boundary edges (interior on the left -> CCW outer walk).
    edges = {}
    for x, y in cells:
        if (x, y - 1) not in cells:
            edges[(x, y)] = (x + 1, y)
        if (x + 1, y) not in cells:
            edges[(x + 1, y)] = (x + 1, y + 1)
        if (x, y + 1) not in cells:
            edges[(x + 1, y + 1)] = (x, y + 1)
        if (x - 1, y) not in cells:
            edges[(x, y + 1)] = (x, y)
    start = min(edges)
    path = [start]
    cur = edges[start]
    while cur != start:
        path.append(cur)
        nxt = edges.get(cur)
        if nxt is None:
            return None
        cur = nxt
    if len(path) != len(edges):
        return None  # holes leave a second loop behind
    # Collapse collinear runs into (length, turn) pairs.
    out = []
    n = len(path)
    segs = []
    for k in range(n):
        ax, ay = path[k]
        bx, by = path[(k + 1) % n]
        segs.append(((bx - ax, by - ay), 1))
    merged = []
    for d, ln in segs:
        if merged and merged[-1][0] == d:
            merged[-1] = (d, merged[-1][1] + ln)
        else:
            merged.append((d, ln))
    if len(merged) > 1 and merged[0][0] == merged[-1][0]:
        merged[0] = (merged[0][0], merged[0][1] + merged[-1][1])
        merged.pop()
    for k, (d, ln) in enumerate(merged):
        nd = merged[(k + 1) % len(merged)][0]
        cross = d[0] * nd[1] - d[1] * nd[0]
        out.append((ln, "L" if cross > 0 else "R"))
    return out


def similarity_ratio(a: set, b: set):
    """Scale factor of b relative to a when similar, else None.

    Rotations come out as cyclic shifts of the boundary description and
    reflections as reversals; both are allowed.
    """
    pa, pb = boundary_polygon(a), boundary_polygon(b)
    if pa is None or pb is None or len(pa) != len(pb):
        return None
    n = len(pa)

    def try_align(seq):
        for shift in range(n):
            rot = seq[shift:] + seq[:shift]
            if all(rot[k][1] == pa[k][1] for k in range(n)):
                ratio = Fraction(rot[0][0], pa[0][0])
                if all(Fraction(rot[k][0], pa[k][0]) == ratio for k in range(n)):
                    return ratio
        return None

    r = try_align(pb)
    if r is not None:
        return r
    # Walking b's boundary in reverse traces the mirror image: reversal and
    # reflection each flip turn handedness (cancelling out), while each
    # segment re-pairs with the turn that preceded it in the forward walk.
    flipped = [(pb[n - 1 - j][0], pb[n - 2 - j][1]) for j in range(n)]
    return try_align(flipped)
