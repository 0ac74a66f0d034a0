import pytest
from hypothesis import given
import hypothesis.strategies as st

from src.address import (Address, Turn, address_from_index, expand, format_address, mirror,
                         parse_address, wound_address)
from src.errors import AddressSyntaxError, ExpansionError

L, R = Turn.L, Turn.R

turns = st.lists(st.sampled_from([L, R]), max_size=12).map(tuple)
addresses = st.builds(Address, turns, turns)


def test_parse_wound_tip():
    a = parse_address("R^3(LR)^inf")
    assert a.prefix == (R, R, R)
    assert a.cycle == (L, R)
    assert not a.is_finite


def test_parse_pure_cycle():
    assert parse_address("(LR)^inf") == Address((), (L, R))


def test_parse_finite():
    a = parse_address("RLLR")
    assert a == Address((R, L, L, R))
    assert a.is_finite


def test_parse_nested_repeats_and_whitespace():
    assert parse_address(" (R^2 L)^2 (RL)^inf ") == Address((R, R, L, R, R, L), (R, L))


def test_cycle_kept_as_written():
    assert parse_address("R(LR)^inf") != parse_address("(RL)^inf")


@pytest.mark.parametrize("text, position", [
    ("", 0),
    ("RX", 1),
    ("(LR)^inf R", 9),
    ("R^0", 2),
    ("R^inf", 2),
    ("(LR", 3),
    ("((LR)^inf)", 1),
    ("R^", 2),
])
def test_syntax_errors_report_position(text, position):
    with pytest.raises(AddressSyntaxError) as info:
        parse_address(text)
    assert info.value.position == position


def test_expansion_longer_than_limit_is_rejected():
    with pytest.raises(AddressSyntaxError):
        parse_address("(LR)^5000")


def test_mirror_examples():
    assert mirror(parse_address("R^3(LR)^inf")) == parse_address("L^3(RL)^inf")
    assert mirror(parse_address("(LR)^inf")) == parse_address("(RL)^inf")
    assert mirror(Address()) == Address()


@given(addresses)
def test_mirror_is_an_involution(a):
    assert mirror(mirror(a)) == a


def test_expand_examples():
    assert expand(parse_address("R^3(LR)^inf"), 5) == (R, R, R, L, R)
    assert expand(parse_address("(LR)^inf"), 4) == (L, R, L, R)
    assert expand(parse_address("RLLR"), 4) == (R, L, L, R)


def test_expand_past_finite_address_fails():
    with pytest.raises(ExpansionError):
        expand(parse_address("RLLR"), 5)


def test_expand_respects_depth_limit():
    a = parse_address("(LR)^inf")
    assert len(a.expand(64)) == 64
    with pytest.raises(ExpansionError):
        a.expand(65)
    with pytest.raises(ExpansionError):
        a.expand(-1)


@given(addresses.filter(lambda a: a.cycle), st.integers(0, 40))
def test_expansion_is_prefix_closed(a, depth):
    assert a.expand(depth + 1)[:depth] == a.expand(depth)


@given(addresses.filter(lambda a: a.prefix or a.cycle))
def test_format_parse_round_trip(a):
    assert parse_address(format_address(a)) == a


def test_format_uses_run_length():
    assert format_address(wound_address(3)) == "R^3(LR)^inf"
    assert format_address(Address((R, L, L, R))) == "RL^2R"
    assert format_address(Address()) == ""


def test_address_from_index():
    assert address_from_index(0) == Address()
    assert address_from_index(1) == Address((L,))
    assert address_from_index(2) == Address((R,))
    assert address_from_index(5) == Address((R, L))
    # last branch of level 3
    assert address_from_index(14) == Address((R, R, R))
