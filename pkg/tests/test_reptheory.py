from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, strategies as st

from wreathcalc.category import hom_set
from wreathcalc.errors import InputError, ResourceError
from wreathcalc.groups import Subgroup, parse_group
from wreathcalc.partition import ColourSet, beta, compose, empty_partition, make_partition, tensor_all
from wreathcalc.reptheory import (RepLabel, amalgamated_engine, build_table, canonical_word,
                                  check_dimension_multiplicative, check_gram_factorization, dimension,
                                  equivalence_class, fuse, glued_semiring, gram_dims, words_equivalent)

Z4 = parse_group("abelian:4")
CS = ColourSet(Z4, [(1,), (3,)])
L2 = Subgroup(Z4, [(2,)])


@pytest.fixture(scope="module")
def table():
    return build_table(CS, L2, 4, bound=6, max_word_len=2)


def projector(cs, obj):
    """Idempotent (up to scalars) partition cutting out an object."""
    pieces = []
    for kind, f in obj:
        n = len(f)
        if kind == "merge":
            pieces.append(make_partition(cs, f, f, [range(2 * n)]))
        else:
            pieces.append(beta(cs, f))
    return tensor_all(pieces, cs) if pieces else empty_partition(cs)


def test_hom_counts_match_projector_fixed_points():
    eng = amalgamated_engine(CS, L2, 4, bound=6, max_word_len=2)
    objs = [o for _, _, o, _ in eng.candidate_objects()]
    checked = 0
    for X, Y in product(objs, repeat=2):
        w, v = eng.object_word(X), eng.object_word(Y)
        if len(w) + len(v) > 6:
            continue
        PX, PY = projector(CS, X), projector(CS, Y)
        members, _ = hom_set(eng.handle, w, v, 6)
        fixed = sum(1 for r in members if compose(PY, compose(r, PX).partition).partition == r)
        assert eng.hom(X, Y) == fixed
        checked += 1
    assert checked > 20


def test_small_fusion_rules(table):
    G = Z4
    h1 = RepLabel.higher(((1,),))
    d = fuse(table, h1, h1)
    assert d == {RepLabel.higher(((1,), (1,))): 1, RepLabel.higher(((2,),)): 1, RepLabel.onedim((2,)): 1}
    assert fuse(table, RepLabel.onedim((2,)), RepLabel.higher(((1,), (1,)))) == {RepLabel.higher(((1,), (3,))): 1}
    assert d.format(G) == "Higher(1 1) + Higher(2) + OneDim(2)"


def test_unit_and_dimensions(table):
    one = RepLabel.onedim((0,))
    for lab in table.labels:
        if (one, lab) in table.tensor:
            assert table.tensor[(one, lab)] == {lab: 1}
    assert dimension(table, RepLabel.higher(((1,),))) == 4
    assert dimension(table, RepLabel.higher(((2,),))) == 3
    assert dimension(table, RepLabel.onedim((2,))) == 1
    assert check_dimension_multiplicative(table) == []
    assert check_gram_factorization(table)


def test_multiplicity_matrix_is_unitriangular(table):
    idx = {tuple(o): i for i, o in enumerate(table.processed)}
    for lab, obj in zip(table.labels, table.objects):
        row = table.multiplicity[idx[tuple(obj)]]
        j = table.labels.index(lab)
        assert row[j] == 1 and all(x == 0 for x in row[j + 1:])


def test_untabulated_label_raises(table):
    with pytest.raises(ResourceError):
        dimension(table, RepLabel.higher(((1,), (1,), (1,), (1,))))


def test_small_N_rejected():
    with pytest.raises(InputError):
        amalgamated_engine(CS, L2, 3)


def test_gram_matrix_symmetric():
    eng = amalgamated_engine(CS, L2, 4, bound=6, max_word_len=2)
    words = [((1,),), ((3,),), ((1,), (1,)), ((1,), (3,))]
    M, exact = gram_dims(eng.handle, words, 4)
    assert not exact
    assert all(M[i][j] == M[j][i] for i in range(4) for j in range(4))
    assert M[0][0] == 1


@given(st.lists(st.sampled_from([(0,), (1,), (2,), (3,), (4,), (5,)]), min_size=1, max_size=4))
def test_canonical_word_is_class_invariant(w):
    Z6 = parse_group("abelian:6")
    L = Subgroup(Z6, [(2,)])
    c = canonical_word(Z6, L, w)
    assert words_equivalent(Z6, L, w, c)
    assert Z6.product(c) == Z6.product(w)
    if len(w) <= 3:
        assert all(canonical_word(Z6, L, x) == c for x in equivalence_class(Z6, L, w))


def test_glued_model_small():
    _, qtable, rep = glued_semiring(CS, L2, 4, bound=6, max_word_len=2)
    assert rep.ok and rep.bijection and rep.tensor_match and rep.dims_match
    assert qtable.group.torsion == (2,)


def test_symmetric_group_table():
    S3 = parse_group("perm:(1 2),(1 2 3)")
    a, b = S3.parse_element("(1 2)"), S3.parse_element("(2 3)")
    cs = ColourSet(S3, [a, b])
    A3 = Subgroup(S3, [S3.parse_element("(1 2 3)")])
    t = build_table(cs, A3, 4, bound=4, max_word_len=1)
    onedim = sorted(lab.value for lab in t.labels if lab.kind == "onedim")
    assert onedim == A3.elements()
    assert check_dimension_multiplicative(t) == []
