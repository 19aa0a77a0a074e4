from __future__ import annotations

from hypothesis import given, strategies as st
import pytest

from wreathcalc.errors import InputError
from wreathcalc.groups import (FGAbelian, Subgroup, format_cycles, is_normal, normal_closure, parse_cycles,
                               parse_group, quotient, shortest_factorization, smith_normal_form, transversal)


def test_cyclic_arithmetic():
    G = parse_group("abelian:4")
    assert G.mul((3,), (3,)) == (2,)
    assert G.inv((1,)) == (3,)
    Z = parse_group("zrank:1+abelian:2")
    assert Z.mul((1, 1), (2, 1)) == (3, 0)


def test_element_literals_validated():
    G = parse_group("abelian:4")
    with pytest.raises(InputError):
        G.parse_element("5")
    with pytest.raises(InputError):
        parse_group("dihedral:4")
    assert G.format_element(G.parse_element("3")) == "3"


def test_cycle_round_trip():
    a = parse_cycles("(1 2 3)", 4)
    assert format_cycles(a) == "(1 2 3)"
    S3 = parse_group("perm:(1 2),(1 2 3)")
    assert len(S3.elements()) == 6
    # right factor acts first
    assert S3.mul(S3.parse_element("(1 2)"), S3.parse_element("(2 3)")) == S3.parse_element("(1 2 3)")


def test_subgroups_and_normality():
    S3 = parse_group("perm:(1 2),(1 2 3)")
    A3 = Subgroup(S3, [S3.parse_element("(1 2 3)")])
    T = Subgroup(S3, [S3.parse_element("(1 2)")])
    assert A3.order() == 3 and is_normal(A3)
    assert not is_normal(T)
    assert normal_closure(T).order() == 6
    assert normal_closure(A3).order() == 3


def test_quotients():
    G = parse_group("abelian:6")
    Q, proj = quotient(G, Subgroup(G, [(2,)]))
    assert Q.order() == 2 and proj((5,)) == (1,)
    S3 = parse_group("perm:(1 2),(1 2 3)")
    Q, proj = quotient(S3, Subgroup(S3, [S3.parse_element("(1 2 3)")]))
    assert isinstance(Q, FGAbelian) and Q.torsion == (2,)
    assert proj(S3.parse_element("(1 2)")) == (1,)


def test_quotient_of_infinite_group():
    G = parse_group("zrank:1")
    Q, proj = quotient(G, Subgroup(G, [(3,)]))
    assert Q.order() == 3
    assert proj((7,)) == proj((1,))


def test_transversal_picks_coset_representatives():
    G = parse_group("abelian:4")
    rep = transversal(G, Subgroup(G, [(2,)]))
    assert rep((3,)) == (1,)
    assert len({rep(g) for g in G.elements()}) == 2


def test_shortest_factorization():
    G = parse_group("abelian:4")
    w = shortest_factorization(G, [(1,), (3,)], (2,))
    assert len(w) == 2 and G.product(w) == (2,)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_form_transforms(rows):
    D, U, V = smith_normal_form(rows, 3)
    # U * B * V = D with D diagonal and dividing chain
    import numpy as np
    B = np.array(rows, dtype=object)
    P = np.array(U, dtype=object).dot(B).dot(np.array(V, dtype=object))
    assert (P == np.array(D, dtype=object)).all()
    diag = [D[i][i] for i in range(min(len(D), 3))]
    for i in range(len(D)):
        for j in range(3):
            if i != j:
                assert D[i][j] == 0
    nz = [abs(d) for d in diag if d]
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


@given(st.integers(0, 11), st.integers(0, 11), st.integers(0, 11))
def test_cyclic_group_axioms(a, b, c):
    G = FGAbelian(0, (12,))
    x, y, z = (a,), (b,), (c,)
    assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
    assert G.mul(x, G.inv(x)) == G.identity()
