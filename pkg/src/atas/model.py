"""Labels, signals, directions and active tiles.

Labels are opaque strings; a leading ``-`` marks the complement ("-55" is
the complement of "55").  Directions are the four axial directions of the
plane, written "+y", "+x", "-y", "-x".  A signal source may additionally be
"0", which marks an initiation signal (ready to fire into a neighbor).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

DIRECTIONS = ("+y", "+x", "-y", "-x")

OPPOSITE = {"+y": "-y", "-y": "+y", "+x": "-x", "-x": "+x"}

#: Counter-clockwise quarter turn: content on side d ends up on side ROT_CCW[d].
ROT_CCW = {"+x": "+y", "+y": "-x", "-x": "-y", "-y": "+x"}

#: Lattice step for each direction.
DELTA = {"+y": (0, 1), "+x": (1, 0), "-y": (0, -1), "-x": (-1, 0)}

_DIR_INDEX = {d: i for i, d in enumerate(DIRECTIONS)}

ROTATION_TAGS = ("N", "E", "S", "W")


def negate(label: str) -> str:
    """Complement of a label; an involution."""
    return label[1:] if label.startswith("-") else "-" + label


def label_base(label: str) -> str:
    """The unsigned symbol the strength function is keyed on."""
    return label[1:] if label.startswith("-") else label


def is_positive(label: str) -> bool:
    return not label.startswith("-")


class Signal(NamedTuple):
    """A transmission or activation signal: base symbol, source, target.

    ``src`` is a direction or "0" (initiation); ``dst`` is always a
    direction.
    """

    base: str
    src: str
    dst: str

    def __str__(self) -> str:
        return f"{self.base}({self.src}->{self.dst})"


class TileSide(NamedTuple):
    active: frozenset
    inactive: frozenset


EMPTY_SIDE = TileSide(frozenset(), frozenset())


def side(active: Iterable[str] = (), inactive: Iterable[str] = ()) -> TileSide:
    return TileSide(frozenset(active), frozenset(inactive))


def _side_key(s: TileSide):
    return (tuple(sorted(s.active)), tuple(sorted(s.inactive)))


@dataclass(frozen=True)
class ActiveTile:
    """An active tile: four sides plus activation/transmission signal sets.

    ``name`` is bookkeeping only (base name plus rotation tag); equality and
    hashing are structural.  Sides are stored in the order +y, +x, -y, -x.
    """

    sides: tuple
    activation: frozenset
    transmission: frozenset
    name: str = field(default="", compare=False)

    def side(self, direction: str) -> TileSide:
        return self.sides[_DIR_INDEX[direction]]

    @property
    def content_key(self):
        key = getattr(self, "_content_key", None)
        if key is None:
            key = (
                tuple(_side_key(s) for s in self.sides),
                tuple(sorted(self.activation)),
                tuple(sorted(self.transmission)),
            )
            object.__setattr__(self, "_content_key", key)
        return key

    def __hash__(self):
        h = getattr(self, "_hash", None)
        if h is None:
            h = hash(self.content_key)
            object.__setattr__(self, "_hash", h)
        return h

    def is_inert(self) -> bool:
        """True when no rule of the modification function can ever touch it."""
        return (
            not self.activation
            and not self.transmission
            and all(not s.inactive for s in self.sides)
        )

    def __repr__(self):
        return f"ActiveTile({self.name or self.content_key!r})"


def make_tile(name, sides_by_dir, activation=(), transmission=()) -> ActiveTile:
    """Build a tile from a {direction: TileSide} mapping; missing sides empty."""
    sides = tuple(sides_by_dir.get(d, EMPTY_SIDE) for d in DIRECTIONS)
    return ActiveTile(
        sides=sides,
        activation=frozenset(activation),
        transmission=frozenset(transmission),
        name=name,
    )


def validate_active_tile(tile: ActiveTile) -> list:
    """All structural violations of a would-be active tile (empty = valid).

    Checks, per side: no complementary or duplicate-with-complement labels
    across the active/inactive sets; and globally: no initiation signals in
    the activation set, all signal directions well-formed.
    """
    problems = []
    for d in DIRECTIONS:
        a, i = tile.side(d)
        for c in a:
            if negate(c) in a:
                problems.append(f"side {d}: active set holds both {c} and {negate(c)}")
            if c in i or negate(c) in i:
                problems.append(f"side {d}: {c} is active while {c}/{negate(c)} is inactive")
        for c in i:
            if negate(c) in i and is_positive(c):
                problems.append(f"side {d}: inactive set holds both {c} and {negate(c)}")
    for s in tile.activation:
        if s.src == "0":
            problems.append(f"activation signal {s} is an initiation signal")
        elif s.src not in DIRECTIONS:
            problems.append(f"activation signal {s} has bad source")
        if s.dst not in DIRECTIONS:
            problems.append(f"activation signal {s} has bad target")
        if not is_positive(s.base):
            problems.append(f"activation signal {s} must use the base symbol")
    for s in tile.transmission:
        if s.src != "0" and s.src not in DIRECTIONS:
            problems.append(f"transmission signal {s} has bad source")
        if s.dst not in DIRECTIONS:
            problems.append(f"transmission signal {s} has bad target")
        if not is_positive(s.base):
            problems.append(f"transmission signal {s} must use the base symbol")
    return problems


def check_registered(tile: ActiveTile, strength: dict) -> list:
    """Label/signal base symbols not present in the strength table."""
    missing = []
    for d in DIRECTIONS:
        a, i = tile.side(d)
        for c in a | i:
            if label_base(c) not in strength:
                missing.append(f"side {d}: unregistered label {c}")
    for s in tile.activation | tile.transmission:
        if s.base not in strength:
            missing.append(f"signal {s}: unregistered base {s.base}")
    return missing


def _rotate_tag(name: str) -> str:
    if "_" in name:
        stem, _, tag = name.rpartition("_")
        if tag in ROTATION_TAGS:
            nxt = ROTATION_TAGS[(ROTATION_TAGS.index(tag) + 1) % 4]
            return f"{stem}_{nxt}"
    return name


def _rotate_signal(s: Signal) -> Signal:
    src = s.src if s.src == "0" else ROT_CCW[s.src]
    return Signal(s.base, src, ROT_CCW[s.dst])


def rotate_ccw(tile: ActiveTile) -> ActiveTile:
    """Quarter-turn counter-clockwise: side d moves to ROT_CCW[d], signals
    rotate with it (initiation sources stay "0"), rotation tag advances."""
    new_sides = [EMPTY_SIDE] * 4
    for d in DIRECTIONS:
        new_sides[_DIR_INDEX[ROT_CCW[d]]] = tile.side(d)
    return ActiveTile(
        sides=tuple(new_sides),
        activation=frozenset(_rotate_signal(s) for s in tile.activation),
        transmission=frozenset(_rotate_signal(s) for s in tile.transmission),
        name=_rotate_tag(tile.name),
    )


def rotation_class(tile: ActiveTile) -> list:
    """The distinct rotations of a tile (four, fewer if symmetric)."""
    out = [tile]
    t = tile
    for _ in range(3):
        t = rotate_ccw(t)
        if all(t != u for u in out):
            out.append(t)
    return out
