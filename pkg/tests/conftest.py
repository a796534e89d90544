"""Shared fixtures: the built-in system, a full staged run, and a small
four-tile signal-relay assembly used to exercise the modification function.
"""

import random
import time

import pytest

from atas import assembler, lshape
from atas.model import Signal, make_tile, side


@pytest.fixture(scope="session")
def system():
    return lshape.builtin_system()


@pytest.fixture(scope="session")
def library():
    return lshape.tiletype_library()


@pytest.fixture(scope="session")
def full_run(system):
    """The 42-stage run used by several acceptance criteria, with wall time."""
    t0 = time.monotonic()
    result = assembler.run(system, stages=42)
    elapsed = time.monotonic() - t0
    return result, elapsed


def relay_demo_cells():
    """Four tiles whose completion takes exactly two steps.

    The center tile holds an inactive pair {r, g} on +x, an activation for
    each, and a mix of initiation and relay signals; the top and bottom
    neighbors feed it, the left neighbor is passive.
    """
    center = make_tile(
        "center",
        {"+x": side(inactive=("r", "g"))},
        activation=(Signal("r", "+y", "+x"), Signal("g", "-y", "+x")),
        transmission=(
            Signal("b", "0", "-x"),
            Signal("y", "0", "+x"),
            Signal("y", "0", "-y"),
            Signal("g", "+y", "-y"),
            Signal("b", "+y", "-y"),
        ),
    )
    top = make_tile(
        "top", {}, transmission=(Signal("b", "0", "-y"), Signal("g", "+y", "-y"))
    )
    bottom = make_tile("bottom", {}, transmission=(Signal("g", "0", "+y"),))
    left = make_tile("left", {})
    return {(0, 0): center, (0, 1): top, (0, -1): bottom, (-1, 0): left}


@pytest.fixture
def relay_demo():
    return relay_demo_cells()


def random_placement(rng: random.Random, tiles, max_tiles=5):
    """A random connected placement of corpus tiles (ignores bindability)."""
    cells = {(0, 0): rng.choice(tiles)}
    for _ in range(rng.randrange(max_tiles)):
        x, y = rng.choice(list(cells))
        dx, dy = rng.choice([(0, 1), (0, -1), (1, 0), (-1, 0)])
        cells[(x + dx, y + dy)] = rng.choice(tiles)
    return cells
