import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgscert.graph import Graph, adjacency_matrix, complement, complete_graph, path_graph
from dgscert.linalg import matmul, smith_diagonal
from dgscert.ntheory import Factorization
from dgscert.walk import (IndeterminateError, build_walk_matrix, fn_membership, in_family_fn, profile,
                          walk_columns, walk_sums)

from properties import (det_two_adic_bound, dn_minimality, p2_kernel_brute, p2_kernel_sample, random_graph,
                        rank2_bound, snf_structure, walk_sum_parity)


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    return Graph.from_edge_mask(n, draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1)))


@given(graphs())
def test_walk_matrix_columns_are_powers(g):
    a = adjacency_matrix(g)
    w = build_walk_matrix(g)
    col = [[1] for _ in range(g.n)]
    for k in range(g.n):
        assert [r[k] for r in w] == [c[0] for c in col]
        col = matmul(a, col)
    assert walk_sums(g, g.n) == [sum(c) for c in walk_columns(g)]


def test_path_walk_matrix():
    assert build_walk_matrix(path_graph(3)) == [[1, 1, 2], [1, 2, 2], [1, 1, 2]]


def test_complete_graph_not_controllable():
    prof = profile(complete_graph(5))
    assert not prof.controllable and prof.det == 0 and prof.in_fn is False
    assert not in_family_fn(prof)


@given(graphs(max_n=12))
@settings(max_examples=60)
def test_profile_consistency(g):
    prof = profile(g)
    assert prof.snf_diagonal == smith_diagonal(prof.walk_matrix)
    if prof.controllable:
        assert prof.det_factorization.value == prof.det
        assert prof.dn_factorization.value == prof.dn
        assert prof.det % prof.dn == 0


@given(graphs(max_n=10), st.randoms(use_true_random=False))
@settings(max_examples=40)
def test_relabel_and_complement_invariance(g, rnd):
    # W(PG) = P W(G), and W(complement) = W(G) T with T unimodular
    perm = list(range(g.n))
    rnd.shuffle(perm)
    base = profile(g)
    for h in (g.relabel(perm), complement(g)):
        other = profile(h)
        assert other.snf_diagonal == base.snf_diagonal
        assert abs(other.det) == abs(base.det)


def test_fixture_profiles(g1, g2, counterexample):
    p1 = profile(g1)
    assert p1.det == 2 ** 6 * 17 * 67 * 8054231
    assert p1.dn == 2 * 17 * 67 * 8054231
    assert p1.in_fn is True
    p2 = profile(g2)
    assert p2.det == -(2 ** 6) * 3 ** 2 * 5 * 197 * 263 * 5821
    assert p2.dn == 2 * 3 ** 2 * 5 * 197 * 263 * 5821
    assert p2.in_fn is False
    pc = profile(counterexample)
    assert pc.det == 2 ** 6 * 3 ** 2 * 157 * 1361 * 2237
    assert pc.dn == 2 * 3 * 157 * 1361 * 2237


def test_fn_membership_rules():
    assert fn_membership(4, 4 * 15, Factorization(1, ((2, 2), (3, 1), (5, 1))))
    assert not fn_membership(4, 8 * 15, Factorization(1, ((2, 3), (3, 1), (5, 1))))
    assert not fn_membership(4, 4 * 9, Factorization(1, ((2, 2), (3, 2))))
    assert not fn_membership(4, 0, None)
    # a residual hides whether the odd part is square-free
    with pytest.raises(IndeterminateError):
        fn_membership(4, 4 * 91, Factorization(1, ((2, 2),), residual=91))
    # but a wrong 2-part decides it regardless
    assert not fn_membership(4, 8 * 91, Factorization(1, ((2, 3),), residual=91))


def test_small_sweeps_of_walk_properties():
    rng = random.Random(11)
    failures = []
    for _ in range(150):
        g = random_graph(rng.randint(1, 12), rng)
        failures += walk_sum_parity(g) + rank2_bound(g) + det_two_adic_bound(g) + dn_minimality(g)
        failures += snf_structure(build_walk_matrix(g))
    assert failures == []


@pytest.mark.parametrize("p", [2, 3])
def test_p2_kernel_small(p):
    from dgscert.linalg import smith_normal_form
    rng = random.Random(p)
    seen = set()
    for _ in range(60):
        m = p2_kernel_sample(rng, p, max_n=3)
        expect = smith_normal_form(m).last % (p * p) == 0
        assert p2_kernel_brute(m, p) == expect, m
        seen.add(expect)
    assert seen == {True, False}
