from __future__ import annotations


from hypothesis import given, settings, strategies as st
import pytest

from wreathcalc.errors import InputError
from wreathcalc.groups import parse_group
from wreathcalc.partition import (ColourSet, all_labelings, beta, colour_product_condition, compose,
                                  enumerate_partitions, format_partition, from_one_row, identity_partition,
                                  involution, is_noncrossing, make_partition, noncrossing_labelings,
                                  parse_partition, rotate_down_left, rotate_down_right, rotate_up_left,
                                  rotate_up_right, tensor, to_one_row)
from wreathcalc.suite import catalan, crossing_bruteforce

Z4 = parse_group("abelian:4")
CS = ColourSet(Z4, [(1,), (3,)])
U = ColourSet.uncoloured()


@st.composite
def partitions(draw, max_upper=3, max_lower=3):
    n = draw(st.integers(0, max_upper))
    m = draw(st.integers(0, max_lower))
    upper = draw(st.lists(st.sampled_from(CS.colours), min_size=n, max_size=n))
    lower = draw(st.lists(st.sampled_from(CS.colours), min_size=m, max_size=m))
    labels = draw(st.lists(st.integers(0, n + m), min_size=n + m, max_size=n + m))
    blocks = {}
    for x, b in enumerate(labels):
        blocks.setdefault(b, []).append(x)
    return make_partition(CS, upper, lower, blocks.values())


def test_noncrossing_counts_are_catalan():
    for n in range(9):
        assert sum(1 for _ in noncrossing_labelings(n)) == catalan(n)
    assert catalan(4) == 14 and catalan(6) == 132 and catalan(8) == 1430


def test_bell_numbers():
    assert [sum(1 for _ in all_labelings(n)) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]


def test_enumeration_split_rows():
    g = U.colours[0]
    for n in range(5):
        assert len(enumerate_partitions(U, [g] * n, [g] * (4 - n))) == 14
    assert len(enumerate_partitions(U, [g] * 2, [g] * 2, noncrossing_only=False)) == 15


def test_crossing_detection_matches_bruteforce():
    g = U.colours[0]
    for p in enumerate_partitions(U, [g] * 3, [g] * 3, noncrossing_only=False):
        word, labels = to_one_row(p)
        assert is_noncrossing(p) == (not crossing_bruteforce(labels))


def test_text_round_trip():
    text = "upper=1,3 ; lower=1 ; blocks=[u1 l1][u2]"
    p = parse_partition(CS, text)
    assert format_partition(p) == text
    with pytest.raises(InputError):
        parse_partition(CS, "upper=1 ; lower=2 ; blocks=[u1 l1]")
    with pytest.raises(InputError):
        parse_partition(CS, "upper=1 ; lower=1 ; blocks=[u1]")


@settings(max_examples=60)
@given(partitions())
def test_format_parse_identity(p):
    assert parse_partition(CS, format_partition(p)) == p


def test_identity_is_neutral_for_composition():
    p = parse_partition(CS, "upper=1,3 ; lower=1 ; blocks=[u1 u2 l1]")
    assert compose(p, identity_partition(CS, p.upper)).partition == p
    assert compose(identity_partition(CS, p.lower), p).partition == p


def test_loop_counting():
    # cap on top of cup closes one loop
    g = U.colours[0]
    cup = make_partition(U, [], [g, g], [["l1", "l2"]])
    cap = make_partition(U, [g, g], [], [["u1", "u2"]])
    res = compose(cap, cup)
    assert res.removed_loops == 1 and res.partition.size == 0


def test_composition_requires_matching_rows():
    p = parse_partition(CS, "upper=1 ; lower=1 ; blocks=[u1 l1]")
    q = parse_partition(CS, "upper=3 ; lower=3 ; blocks=[u1 l1]")
    with pytest.raises(InputError):
        compose(p, q)


@settings(max_examples=60)
@given(partitions(), partitions(), partitions())
def test_tensor_associative(p, q, r):
    assert tensor(tensor(p, q), r) == tensor(p, tensor(q, r))


@settings(max_examples=60)
@given(partitions())
def test_rotations_are_inverse(p):
    if p.n_upper:
        assert rotate_up_left(rotate_down_left(p)) == p
        assert rotate_up_right(rotate_down_right(p)) == p
    assert involution(involution(p)) == p


@settings(max_examples=60)
@given(partitions())
def test_rotation_preserves_one_row_form_cyclically(p):
    if p.n_upper:
        w, lab = to_one_row(p)
        w2, lab2 = to_one_row(rotate_down_left(p))
        assert sorted(w) == sorted(w2)
        assert is_noncrossing(p) == is_noncrossing(rotate_down_left(p))
        assert colour_product_condition(p) == colour_product_condition(rotate_down_left(p))


@settings(max_examples=60)
@given(partitions())
def test_one_row_inverse(p):
    w, lab = to_one_row(p)
    assert from_one_row(CS, w, lab, p.n_upper) == p


def test_colour_condition():
    assert colour_product_condition(parse_partition(CS, "upper=1 ; lower=1 ; blocks=[u1 l1]"))
    assert not colour_product_condition(parse_partition(CS, "upper=1 ; lower=3 ; blocks=[u1 l1]"))
    b = beta(CS, [(1,), (1,)])
    assert not colour_product_condition(b)
    Z2 = parse_group("abelian:2")
    proj = lambda c: ((c[0] % 2),)
    assert colour_product_condition(b, proj, Z2)


def test_colour_set_validation():
    with pytest.raises(InputError):
        ColourSet(Z4, [(1,)])          # not closed under inverses
    with pytest.raises(InputError):
        ColourSet(Z4, [(2,)])          # does not generate
