"""The tile modification function f and synchronous assembly completion.

``modify_tile`` computes one application of f to a single tile given its
four (pre-step) neighbors.  ``apply_f`` runs one simultaneous step over a
whole placement; ``complete`` iterates it to a fixed point.  A strictly
decreasing potential bounds the iteration count.
"""

from __future__ import annotations

from .model import (
    ActiveTile,
    DELTA,
    DIRECTIONS,
    OPPOSITE,
    Signal,
    TileSide,
    label_base,
)


def modify_tile(tile: ActiveTile, neighbors: dict) -> ActiveTile:
    """One application of f to ``tile``.

    ``neighbors`` maps each direction to the *pre-step* neighboring tile, or
    None where the adjacent cell is empty.  All reads are against the
    pre-step state; the result is the post-step tile.
    """
    S = tile.transmission
    A = tile.activation

    def nbr_signals(d):
        t = neighbors.get(d)
        return t.transmission if t is not None else frozenset()

    def delivers(base, d):
        """Neighbor on side d holds the initiation ``base`` aimed at us."""
        return Signal(base, "0", OPPOSITE[d]) in nbr_signals(d)

    def can_feed(base, d):
        """Neighbor on side d holds *some* ``base`` signal aimed at us."""
        return any(
            t.base == base and t.dst == OPPOSITE[d] for t in nbr_signals(d)
        )

    # Rule 1: an inactive label with an activation signal whose source-side
    # neighbor fired the matching initiation becomes active; inactive labels
    # with no activation signal at all can never activate and are removed.
    new_sides = []
    for d in DIRECTIONS:
        a, i = tile.side(d)
        fired = set()
        dead = set()
        for c in i:
            acts = [s for s in A if s.base == label_base(c) and s.dst == d]
            if not acts:
                dead.add(c)
            elif any(delivers(s.base, s.src) for s in acts):
                fired.add(c)
        if fired or dead:
            new_sides.append(TileSide(a | fired, i - (fired | dead)))
        else:
            new_sides.append(TileSide(a, i))

    # Rule 2: an activation signal is spent once its source side is occupied
    # and the neighbor either fired it or can never feed it.
    new_activation = frozenset(
        s
        for s in A
        if neighbors.get(s.src) is None
        or (not delivers(s.base, s.src) and can_feed(s.base, s.src))
    )

    # Rule 3: relays fed this step are reborn as initiations; spent or
    # unservable signals are removed.
    s_added = {
        Signal(s.base, "0", s.dst)
        for s in S
        if s.src != "0" and delivers(s.base, s.src)
    }
    s_removed = set()
    for s in S:
        if s.src != "0" and neighbors.get(s.src) is not None:
            # S1: same fate as rule 2, applied to relays.
            if delivers(s.base, s.src) or not can_feed(s.base, s.src):
                s_removed.add(s)
        if neighbors.get(s.dst) is not None:
            if s.src == "0":
                # S3: initiations at an occupied side are delivered (or
                # undeliverable) and in either case removed.
                s_removed.add(s)
            else:
                # S2: no receiver across the seam -- nothing there carries a
                # matching signal sourced from the shared edge.
                nb = neighbors[s.dst]
                back = OPPOSITE[s.dst]
                if not any(
                    t.base == s.base and t.src == back
                    for t in nb.transmission | nb.activation
                ):
                    s_removed.add(s)

    new_transmission = (S | s_added) - s_removed

    return ActiveTile(
        sides=tuple(new_sides),
        activation=new_activation,
        transmission=frozenset(new_transmission),
        name=tile.name,
    )


def potential(cells: dict) -> int:
    """Nonnegative measure that strictly decreases on every non-identity step."""
    total = 0
    for tile in cells.values():
        total += sum(len(s.inactive) for s in tile.sides)
        total += len(tile.activation)
        for s in tile.transmission:
            total += 1 if s.src == "0" else 2
    return total


def _neighbors_of(cells: dict, pos) -> dict:
    x, y = pos
    return {d: cells.get((x + dx, y + dy)) for d, (dx, dy) in DELTA.items()}


def apply_f(cells: dict, dirty=None):
    """One synchronous step of f across ``cells``.

    Returns ``(new_cells, changed)`` where ``changed`` is the set of
    positions whose tile differs from before.  When ``dirty`` is given only
    those positions are re-evaluated (callers must pass a superset of the
    positions that can change).
    """
    targets = cells.keys() if dirty is None else dirty
    new_cells = dict(cells)
    changed = set()
    for pos in targets:
        tile = cells.get(pos)
        if tile is None:
            continue
        out = modify_tile(tile, _neighbors_of(cells, pos))
        if out != tile:
            new_cells[pos] = out
            changed.add(pos)
    return new_cells, changed


def _with_neighbors(cells: dict, positions) -> set:
    out = set(positions)
    for x, y in positions:
        for dx, dy in DELTA.values():
            if (x + dx, y + dy) in cells:
                out.add((x + dx, y + dy))
    return out


def complete(cells: dict, max_steps=None):
    """Iterate f to a fixed point; returns ``(final_cells, steps)``.

    ``steps`` counts the non-identity iterations performed.  The dirty set
    starts as every cell f could touch, then narrows to last step's changes
    plus their neighbors.
    """
    dirty = _with_neighbors(
        cells, {pos for pos, t in cells.items() if not t.is_inert()}
    )
    steps = 0
    while dirty:
        if max_steps is not None and steps >= max_steps:
            raise RuntimeError("completion exceeded step budget")
        cells, changed = apply_f(cells, dirty)
        if not changed:
            break
        steps += 1
        dirty = _with_neighbors(cells, changed)
    return cells, steps
