import pytest

from atas.model import (
    DIRECTIONS,
    Signal,
    check_registered,
    is_positive,
    label_base,
    make_tile,
    negate,
    rotate_ccw,
    rotation_class,
    side,
    validate_active_tile,
)


def test_label_helpers():
    assert negate("5") == "-5"
    assert negate("-5") == "5"
    assert label_base("-55") == "55"
    assert label_base("55") == "55"
    assert is_positive("55") and not is_positive("-55")


def test_complementary_labels_on_one_side_rejected():
    bad = make_tile("bad", {"+x": side(active=("5", "-5"))})
    assert validate_active_tile(bad)


def test_initiation_in_activation_set_rejected():
    bad = make_tile("bad", {}, activation=(Signal("5", "0", "+x"),))
    assert validate_active_tile(bad)


def test_valid_tile_passes():
    ok = make_tile(
        "ok",
        {"+y": side(active=("5",), inactive=("-55",))},
        activation=(Signal("55", "-y", "+y"),),
        transmission=(Signal("55", "0", "-x"),),
    )
    assert validate_active_tile(ok) == []


def test_check_registered_flags_unknown_labels():
    t = make_tile("t", {"+x": side(active=("9",))})
    assert check_registered(t, {"5": 1})
    assert not check_registered(t, {"9": 1})


def test_rotation_moves_content_counterclockwise():
    t = make_tile("t_N", {"+x": side(active=("5",))})
    r = rotate_ccw(t)
    assert r.side("+y").active == frozenset({"5"})
    assert r.name == "t_E"


def test_rotation_rotates_signal_endpoints_and_keeps_source_zero():
    t = make_tile(
        "t_N",
        {},
        activation=(Signal("4", "+y", "-x"),),
        transmission=(Signal("55", "0", "-x"),),
    )
    r = rotate_ccw(t)
    assert Signal("4", "-x", "-y") in r.activation
    assert Signal("55", "0", "-y") in r.transmission


def test_rotation_class_has_four_distinct_members():
    t = make_tile("t_N", {"+x": side(active=("5",))})
    cls = rotation_class(t)
    assert len({m.content_key for m in cls}) == 4


@pytest.mark.parametrize("d", DIRECTIONS)
def test_every_direction_has_content(d):
    t = make_tile("t", {d: side(active=("1",))})
    assert t.side(d).active == frozenset({"1"})
