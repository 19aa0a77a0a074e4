from __future__ import annotations

import pytest

from wreathcalc.category import (IN, NOT_IN_UP_TO_BOUND, OUT, amalgamated_category, bounded_closure,
                                 glue_item, hom_set, item_of, partition_of, predicate_category)
from wreathcalc.errors import InputError, ResourceError
from wreathcalc.groups import Subgroup, parse_group, quotient, whole_group
from wreathcalc.partition import (ColourSet, beta, colour_product_condition, compose, enumerate_partitions,
                                  involution, make_partition, parse_partition, rotate_down_right, tensor)

Z4 = parse_group("abelian:4")
CS = ColourSet(Z4, [(1,), (3,)])
L2 = Subgroup(Z4, [(2,)])


def naive_closure(cs, seeds, bound):
    """Close a set of partitions under every operation on actual partitions.

    Items are stored in one-row form; each round materialises every split
    into upper and lower rows and composes all matching pairs.
    """
    items = {item_of(p) for p in seeds}
    for c in cs.colours:
        items.add(item_of(make_partition(cs, [c], [c], [["u1", "l1"]])))
    while True:
        parts = []
        for it in items:
            k = len(it[0])
            parts += [partition_of(cs, it, n) for n in range(k + 1)]
        by_upper: dict = {}
        for p in parts:
            by_upper.setdefault(p.upper, []).append(p)
        new = set()
        for q in parts:
            for p in by_upper.get(q.lower, ()):
                r = compose(p, q).partition
                if r.size <= bound:
                    new.add(item_of(r))
        for p in parts:
            if p.n_upper == 0:
                new.add(item_of(involution(p)))
            if p.n_upper == 1:
                new.add(item_of(rotate_down_right(p)))
        one_row = [p for p in parts if p.n_upper == 0]
        for p in one_row:
            for q in one_row:
                if p.size + q.size <= bound:
                    new.add(item_of(tensor(p, q)))
        if new <= items:
            return frozenset(items)
        items |= new


def test_predicate_membership():
    h = predicate_category(CS)
    assert h.membership(parse_partition(CS, "upper=1 ; lower=1 ; blocks=[u1 l1]")) == IN
    assert h.membership(parse_partition(CS, "upper=1 ; lower=3 ; blocks=[u1 l1]")) == OUT
    crossing = parse_partition(CS, "upper=1,1 ; lower=1,1 ; blocks=[u1 l2][u2 l1]")
    assert h.membership(crossing) == OUT


def test_predicate_hom_set_matches_filter():
    h = predicate_category(CS)
    w, v = ((1,), (3,)), ((1,), (1,), (3,), (3,))
    got, complete = hom_set(h, w, v)
    want = [p for p in enumerate_partitions(CS, w, v) if colour_product_condition(p)]
    assert complete and sorted(got, key=lambda p: p.blocks) == sorted(want, key=lambda p: p.blocks)


def test_quotient_predicate_pulls_back():
    Q, proj = quotient(Z4, L2)
    h = predicate_category(CS, proj, Q)
    assert h.contains(parse_partition(CS, "upper= ; lower=1,1 ; blocks=[l1 l2]"))
    assert not h.contains(parse_partition(CS, "upper= ; lower=1 ; blocks=[l1]"))


@pytest.mark.parametrize("bound", [4, 5])
def test_bounded_closure_matches_naive_closure(bound):
    seeds = [beta(CS, [(1,), (1,)])]
    fast = bounded_closure(CS, [item_of(s) for s in seeds], bound)
    assert fast == naive_closure(CS, seeds, bound)


def test_closure_from_crossing_seed():
    g = ColourSet.uncoloured()
    c = g.colours[0]
    cross = make_partition(g, [c, c], [c, c], [["u1", "l2"], ["u2", "l1"]])
    fast = bounded_closure(g, [item_of(cross)], 4)
    assert fast == naive_closure(g, [cross], 4)
    assert item_of(cross) in fast


def test_amalgamated_membership_statuses():
    h = amalgamated_category(CS, L2, [[(1,), (1,)]], bound=6)
    assert h.membership(beta(CS, [(1,), (1,)])) == IN
    single = parse_partition(CS, "upper= ; lower=1,1 ; blocks=[l1 l2]")
    assert h.membership(single) == NOT_IN_UP_TO_BOUND
    big = make_partition(CS, [(1,)] * 4, [(1,)] * 4, [range(8)])
    assert h.membership(big) == NOT_IN_UP_TO_BOUND
    with pytest.raises(ResourceError):
        hom_set(h, [(1,)] * 4, [(1,)] * 4)


def test_amalgamated_rejects_bad_factorization():
    with pytest.raises(InputError):
        amalgamated_category(CS, L2, [[(1,)]])


def test_amalgamated_sits_between_base_and_quotient_predicate():
    h = amalgamated_category(CS, L2, [[(1,), (1,)]], bound=5)
    Q, proj = quotient(Z4, L2)
    items = h.close(5)
    assert predicate_category(CS).items(5) <= items
    assert items <= predicate_category(CS, proj, Q).items(5)
    bigger = amalgamated_category(CS, whole_group(Z4), [[(1,)], [(1,), (1,)]], bound=5)
    assert items <= bigger.close(5)


def test_glue_nested_pairs():
    # x = [a b], y = [b^-1 a^-1] glued on two points leaves nothing
    x = ((0, 0), (0, 1))
    y = ((1, 1), (0, 1))
    assert glue_item(x, y, 2) == ((), ())
