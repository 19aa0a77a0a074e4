from __future__ import annotations

import pytest

from wreathcalc.errors import InputError
from wreathcalc.extensions import (MonomialMatrix, all_subgroups, build_classical, check_classical_multiplication,
                                   direct_product_criterion, direct_product_fusion_check,
                                   exact_sequence_word_condition, find_splitting, make_splitting,
                                   measuring_action, monomial_member, verify_action)
from wreathcalc.groups import Subgroup, parse_group
from wreathcalc.partition import ColourSet

S3 = parse_group("perm:(1 2),(1 2 3)")
A3 = Subgroup(S3, [S3.parse_element("(1 2 3)")])


def test_monomial_algebra():
    M = MonomialMatrix(4, (1, 0, 2), (1, 2, 3))
    I = MonomialMatrix(4, (0, 1, 2), (0, 0, 0))
    assert M @ M.inverse() == I
    assert M.dense()[1][0] == "w^1"


def test_monomial_criterion():
    assert monomial_member(MonomialMatrix(4, (0, 1), (1, 3)), 4, 2)
    assert not monomial_member(MonomialMatrix(4, (0, 1), (1, 2)), 4, 2)
    with pytest.raises(InputError):
        monomial_member(MonomialMatrix(4, (0, 1), (1, 2)), 4, 3)


@pytest.mark.parametrize("k,d,N,order", [(4, 2, 3, 96), (3, 3, 3, 18), (2, 1, 2, 8), (6, 3, 2, 24)])
def test_classical_orders(k, d, N, order):
    m = build_classical(k, d, N)
    assert m.order == order == m.formula_order
    assert check_classical_multiplication(m, 50, seed=k)


def test_word_condition_tracks_normality():
    T = Subgroup(S3, [S3.parse_element("(1 2)")])
    assert exact_sequence_word_condition(S3, A3)[0]
    ok, witnesses = exact_sequence_word_condition(S3, T)
    assert not ok and witnesses


def test_splitting_of_symmetric_group():
    rho = find_splitting(S3, A3)
    assert rho is not None
    assert rho((1,)) == S3.parse_element("(2 3)")
    assert verify_action(S3, A3, rho)
    assert measuring_action(S3, A3, rho, (1,), S3.parse_element("(1 2 3)")) == S3.parse_element("(1 3 2)")


def test_explicit_splitting_validated():
    rho = make_splitting(S3, A3, {(1,): S3.parse_element("(1 2)")})
    assert rho((1,)) == S3.parse_element("(1 2)")
    with pytest.raises(InputError):
        make_splitting(S3, A3, {(1,): S3.parse_element("(1 2 3)")})


def test_cyclic_cases():
    Z4, Z6 = parse_group("abelian:4"), parse_group("abelian:6")
    assert find_splitting(Z4, Subgroup(Z4, [(2,)])) is None
    rho = find_splitting(Z6, Subgroup(Z6, [(2,)]))
    assert rho((1,)) == (3,)
    dp = direct_product_criterion(Z6, Subgroup(Z6, [(2,)]))
    assert dp.decomposable and dp.gamma0 == [(0,), (3,)]
    assert not direct_product_criterion(Z4, Subgroup(Z4, [(2,)])).decomposable
    assert not direct_product_criterion(S3, A3).decomposable


def test_subgroup_lattice_sizes():
    assert len(all_subgroups(S3)) == 6
    assert len(all_subgroups(parse_group("abelian:2x2"))) == 5


def test_direct_product_fusion_factorizes():
    Z6 = parse_group("abelian:6")
    cs = ColourSet(Z6, [(1,), (5,)])
    ok, problems = direct_product_fusion_check(cs, Subgroup(Z6, [(2,)]))
    assert ok, problems
