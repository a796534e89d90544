"""Assemblies: placements of active tiles with binding graphs and stability.

An assembly is a finite dict ``{(x, y): ActiveTile}`` over the integer
lattice.  The binding graph has one node per occupied cell and one edge per
occupied adjacency; the weight of an edge is the summed strength of the
matched complementary active-label pairs across the shared side.  An
assembly is theta-stable when the binding graph is connected and no edge
cut of total weight below theta exists.

Assemblies are compared up to translation via ``normalize`` /
``canonical_key``; the ``Assembly`` wrapper caches the key, the stability
verdict, and an index of exposed active labels used to enumerate seams.
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx

from .model import DELTA, DIRECTIONS, OPPOSITE, label_base, negate


def edge_strength(lower_tile, upper_tile, direction, strength) -> int:
    """Bond strength across one adjacency.

    ``direction`` points from ``lower_tile`` to ``upper_tile``; matched
    pairs are active labels c on the facing side of one tile and -c on the
    facing side of the other.
    """
    a = lower_tile.side(direction).active
    b = upper_tile.side(OPPOSITE[direction]).active
    return sum(strength[label_base(c)] for c in a if negate(c) in b)


def binding_graph(cells: dict, strength: dict) -> nx.Graph:
    """Weighted graph over the occupied cells, one edge per adjacency."""
    g = nx.Graph()
    g.add_nodes_from(cells)
    for (x, y), tile in cells.items():
        for d in ("+x", "+y"):
            dx, dy = DELTA[d]
            other = cells.get((x + dx, y + dy))
            if other is not None:
                w = edge_strength(tile, other, d, strength)
                g.add_edge((x, y), (x + dx, y + dy), weight=w)
    return g


def min_cut_weight(cells: dict, strength: dict):
    """Global minimum edge-cut weight of the binding graph.

    Returns 0 for a disconnected graph and None for a single tile (no cut
    exists).
    """
    g = binding_graph(cells, strength)
    if g.number_of_nodes() <= 1:
        return None
    if not nx.is_connected(g):
        return 0
    cut, _ = nx.stoer_wagner(g)
    return cut


def min_cut_weight_bruteforce(cells: dict, strength: dict):
    """Oracle: minimum cut by enumerating all bipartitions (n <= ~14)."""
    g = binding_graph(cells, strength)
    nodes = list(g.nodes)
    if len(nodes) <= 1:
        return None
    best = None
    rest = nodes[1:]
    for r in range(len(rest) + 1):
        for side_b in combinations(rest, r):
            left = {nodes[0], *(n for n in rest if n not in side_b)}
            if len(left) == len(nodes):
                continue
            w = sum(
                data["weight"]
                for u, v, data in g.edges(data=True)
                if (u in left) != (v in left)
            )
            if best is None or w < best:
                best = w
    return best


def is_theta_stable(cells: dict, strength: dict, theta: int) -> bool:
    if len(cells) <= 1:
        return True
    cut = min_cut_weight(cells, strength)
    return cut >= theta


def normalize(cells: dict) -> dict:
    """Translate so the minimum x and minimum y coordinates are both 0."""
    if not cells:
        return {}
    mx = min(x for x, _ in cells)
    my = min(y for _, y in cells)
    if mx == 0 and my == 0:
        return dict(cells)
    return {(x - mx, y - my): t for (x, y), t in cells.items()}


def canonical_key(cells: dict):
    """Translation-invariant identity of a placement (content included)."""
    norm = normalize(cells)
    return tuple(
        (pos, norm[pos].content_key) for pos in sorted(norm, key=lambda p: (p[1], p[0]))
    )


def translations_equal(a: dict, b: dict) -> bool:
    return canonical_key(a) == canonical_key(b)


def rotate_cells(cells: dict) -> dict:
    """Rotate a whole placement a quarter turn counter-clockwise."""
    from .model import rotate_ccw

    return normalize({(-y, x): rotate_ccw(t) for (x, y), t in cells.items()})


class Assembly:
    """A normalized placement with cached identity, stability and seams."""

    __slots__ = ("cells", "_key", "_exposed", "_name_grid")

    def __init__(self, cells: dict):
        self.cells = normalize(cells)
        self._key = None
        self._exposed = None
        self._name_grid = None

    @property
    def key(self):
        if self._key is None:
            self._key = canonical_key(self.cells)
        return self._key

    def __len__(self):
        return len(self.cells)

    def __eq__(self, other):
        return isinstance(other, Assembly) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def exposed(self):
        """{(label, direction): [positions]} for active labels on open sides."""
        if self._exposed is None:
            idx = {}
            for (x, y), tile in self.cells.items():
                for d in DIRECTIONS:
                    dx, dy = DELTA[d]
                    if (x + dx, y + dy) in self.cells:
                        continue
                    for c in tile.side(d).active:
                        idx.setdefault((c, d), []).append((x, y))
            self._exposed = idx
        return self._exposed

    def name_grid(self):
        """{pos: tile name} -- the bookkeeping view used for classification."""
        if self._name_grid is None:
            self._name_grid = {pos: t.name for pos, t in self.cells.items()}
        return self._name_grid

    def bounding_box(self):
        xs = [x for x, _ in self.cells]
        ys = [y for _, y in self.cells]
        return (min(xs), min(ys), max(xs), max(ys))

    def footprint(self):
        """(width, height) of the bounding box."""
        x0, y0, x1, y1 = self.bounding_box()
        return (x1 - x0 + 1, y1 - y0 + 1)


def overlaps(a: Assembly, b: Assembly, offset) -> bool:
    ox, oy = offset
    small, big, sx, sy = (
        (a.cells, b.cells, -ox, -oy)
        if len(a.cells) <= len(b.cells)
        else (b.cells, a.cells, ox, oy)
    )
    return any((x + sx, y + sy) in big for x, y in small)


def union_cells(a: Assembly, b: Assembly, offset) -> dict:
    """Cells of a ∪ (b translated by offset); caller ensures disjointness."""
    ox, oy = offset
    out = dict(a.cells)
    for (x, y), t in b.cells.items():
        out[(x + ox, y + oy)] = t
    return out


def seam_weight(a: Assembly, b: Assembly, offset, strength: dict) -> int:
    """Total bond strength across the joint boundary of a and b+offset."""
    ox, oy = offset
    total = 0
    for (x, y), tile in b.cells.items():
        px, py = x + ox, y + oy
        for d in DIRECTIONS:
            dx, dy = DELTA[d]
            other = a.cells.get((px + dx, py + dy))
            if other is not None:
                total += edge_strength(tile, other, d, strength)
    return total
