from __future__ import annotations

from itertools import product

import numpy as np
from hypothesis import given, settings, strategies as st
import pytest

from wreathcalc.errors import ResourceError
from wreathcalc.partition import (ColourSet, compose, enumerate_partitions, involution, make_partition,
                                  rotate_down_left, tensor)
from wreathcalc.tensorops import (ExactMatrix, bareiss_rank, delta, gram_of_partitions, hom_dimension,
                                  tp_matrix, verify_composition)

U = ColourSet.uncoloured()
G = U.colours[0]


@st.composite
def partitions(draw, max_upper=3, max_lower=3, n=None):
    if n is None:
        n = draw(st.integers(0, max_upper))
    m = draw(st.integers(0, max_lower))
    labels = draw(st.lists(st.integers(0, n + m), min_size=n + m, max_size=n + m))
    blocks = {}
    for x, b in enumerate(labels):
        blocks.setdefault(b, []).append(x)
    return make_partition(U, [G] * n, [G] * m, blocks.values())


def _join_blocks(p, q) -> int:
    parent = list(range(p.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (p, q):
        for b in part.blocks:
            for x in b[1:]:
                parent[find(x)] = find(b[0])
    return len({find(x) for x in range(p.size)})


def test_identity_matrix():
    p = make_partition(U, [G, G], [G, G], [["u1", "l1"], ["u2", "l2"]])
    assert tp_matrix(p, 3) == ExactMatrix(np.eye(9, dtype=np.int64))


def test_matrix_entries_follow_delta():
    p = make_partition(U, [G, G], [G], [["u1", "l1"], ["u2"]])
    T = tp_matrix(p, 2)
    for up in product(range(1, 3), repeat=2):
        for lo in product(range(1, 3), repeat=1):
            r = lo[0] - 1
            c = (up[0] - 1) * 2 + (up[1] - 1)
            assert T.a[r, c] == delta(p, up, lo)


@settings(max_examples=40)
@given(partitions(), partitions(), st.sampled_from([2, 3]))
def test_tensor_is_kronecker(p, q, N):
    assert tp_matrix(tensor(p, q), N) == tp_matrix(p, N).kron(tp_matrix(q, N))


@settings(max_examples=40)
@given(partitions(), st.sampled_from([2, 3]))
def test_involution_is_transpose(p, N):
    assert tp_matrix(involution(p), N) == tp_matrix(p, N).transpose()


@settings(max_examples=40)
@given(partitions(max_upper=3), st.sampled_from([2, 3]))
def test_rotation_rebends_indices(p, N):
    if not p.n_upper:
        return
    r = rotate_down_left(p)
    for up in product(range(1, N + 1), repeat=p.n_upper):
        for lo in product(range(1, N + 1), repeat=p.n_lower):
            assert delta(r, up[1:], (up[0],) + lo) == delta(p, up, lo)


@settings(max_examples=60)
@given(st.data())
def test_composition_loop_rule(data):
    q = data.draw(partitions())
    p = data.draw(partitions(n=q.n_lower))
    for N in (2, 3):
        assert verify_composition(p, q, N)


@settings(max_examples=30)
@given(st.data())
def test_gram_is_join_power(data):
    n = data.draw(st.integers(0, 2))
    p = data.draw(partitions(n=n, max_lower=3))
    lower = p.n_lower
    q = data.draw(partitions(n=n, max_lower=lower).filter(lambda x: x.n_lower == lower))
    for N in (2, 3):
        Gm = gram_of_partitions([p, q], N)
        assert Gm[0, 1] == N ** _join_blocks(p, q)
        assert Gm[0, 0] == N ** len(p.blocks)


def test_rank_full_at_N4_and_deficient_at_N2():
    parts = enumerate_partitions(U, [], [G] * 4)
    assert hom_dimension(parts, 4) == 14
    assert hom_dimension(parts, 2) < 14
    six = enumerate_partitions(U, [G] * 3, [G] * 3)
    assert len(six) == 132 and hom_dimension(six, 4) == 132


def test_bareiss_rank():
    assert bareiss_rank([[1, 2], [2, 4]]) == 1
    assert bareiss_rank([[0, 1, 2], [1, 0, 3], [1, 1, 5]]) == 2
    assert bareiss_rank([[2, 0], [0, 3]]) == 2
    rng = np.random.default_rng(1)
    A = rng.integers(-3, 4, size=(6, 5))
    assert bareiss_rank(A.tolist()) == np.linalg.matrix_rank(A.astype(float))


def test_entry_cap():
    p = make_partition(U, [G] * 4, [G] * 4, [[x] for x in range(8)])
    with pytest.raises(ResourceError):
        tp_matrix(p, 10, cap=10**6)


def test_composition_example():
    cup = make_partition(U, [], [G, G], [["l1", "l2"]])
    cap = make_partition(U, [G, G], [], [["u1", "u2"]])
    T = tp_matrix(cap, 3) @ tp_matrix(cup, 3)
    assert T.tolist() == [[3]] and compose(cap, cup).removed_loops == 1
