from atas.engine import apply_f, complete, potential
from atas.model import Signal, side


def test_relay_demo_first_step(relay_demo):
    cells, _ = apply_f(relay_demo)
    center = cells[(0, 0)]
    assert center.side("+x") == side(active=("g",), inactive=("r",))
    assert center.activation == frozenset()
    assert center.transmission == frozenset(
        {Signal("y", "0", "+x"), Signal("b", "0", "-y")}
    )


def test_relay_demo_second_step_reaches_fixed_point(relay_demo):
    cells, _ = apply_f(relay_demo)
    cells, _ = apply_f(cells)
    center = cells[(0, 0)]
    assert center.side("+x") == side(active=("g",))
    assert center.transmission == frozenset({Signal("y", "0", "+x")})
    again, changed = apply_f(cells)
    assert not changed and again == cells


def test_complete_counts_two_steps(relay_demo):
    final, steps = complete(relay_demo)
    assert steps == 2
    assert final[(0, 0)].side("+x") == side(active=("g",))


def test_potential_strictly_decreases(relay_demo):
    cells = relay_demo
    prev = potential(cells)
    while True:
        cells, changed = apply_f(cells)
        if not changed:
            break
        cur = potential(cells)
        assert cur < prev
        prev = cur


def test_singletons_are_fixed_points(system):
    for tile in system.tiles:
        cells = {(0, 0): tile}
        _, changed = apply_f(cells)
        assert not changed, tile.name
