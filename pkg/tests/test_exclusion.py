import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgscert.exclusion import (ENUMERATION_LIMIT, PrimeStatus, Rule, Status, Verdict, _isotropic_rank2,
                               certify, exclude_by_isotropy, exclude_by_squarefree, exclude_level2,
                               isotropic_by_enumeration, level2_candidates)
from dgscert.graph import Graph, adjacency_matrix, complete_graph, parse_graph6
from dgscert.linalg import matmul, nullspace_mod_p, transpose
from dgscert.ntheory import p_adic_valuation, qr_class
from dgscert.walk import profile

from properties import random_graph

# weight-four solutions of W^T u = 0 (mod 2) for G1, as 0/1 indicator vectors
G1_LEVEL2_SOLUTIONS = [
    (0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0, 0),
    (1, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0), (1, 0, 1, 0, 0, 0, 0, 0, 1, 1, 0, 0),
    (1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0), (1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0),
    (0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 1, 0), (0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 0),
    (1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1), (1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1),
    (0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1), (0, 0, 0, 0, 1, 0, 0, 0, 1, 1, 0, 1),
    (0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 1), (0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 1),
    (1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1),
]

# found by random search; d_n divisible by 4 and by two primes above the trial bound
WIDE_2PART = "OQBWpwoPc@dpwHuz^xMaI"
BIG_PRIMES = (14785423, 14486090659)
# rank_3(W) = n - 3 and rank_5(W) = n - 2 with no isotropic vector mod 5
LOW_RANK = "OleSFCxWSzw?EHiEj_kzG"


def _in_kernel(prof, x, p):
    return all(sum(r[i] * x[i] for i in range(len(x))) % p == 0 for r in transpose(prof.walk_matrix))


def test_g1_isotropy_classes(g1):
    prof = profile(g1)
    for p, reference in [(17, 12), (67, 25), (8054231, 1492735)]:
        st_ = exclude_by_isotropy(g1, prof, p)
        assert st_.nullity == 1
        assert st_.status is Status.EXCLUDED and st_.rule is Rule.ISOTROPY
        assert st_.xi_norm != 0
        assert st_.xi_class is qr_class(reference, p)
        assert _in_kernel(prof, st_.witness, p)


def test_g1_level2_candidates_match_reference_set(g1):
    prof = profile(g1)
    cands = level2_candidates(g1, prof)
    got = {tuple(c.indicator(12)) for c in cands}
    assert got == set(G1_LEVEL2_SOLUTIONS)
    assert len(cands) == 15
    assert not any(c.passes_mod4 for c in cands)
    status, _ = exclude_level2(g1, prof)
    assert status.status is Status.EXCLUDED and status.rule is Rule.LEVEL2


def test_g1_certified(g1):
    rep = certify(g1)
    assert rep.verdict is Verdict.CERTIFIED_DGS
    assert [s.prime for s in rep.primes] == [2, 17, 67, 8054231]
    assert all(s.status is Status.EXCLUDED for s in rep.primes)


def test_g2(g2):
    prof = profile(g2)
    expected = {3: 1, 5: 0, 197: 139, 263: 101, 5821: 4298}
    for p, reference in expected.items():
        st_ = exclude_by_isotropy(g2, prof, p)
        assert st_.nullity == 1
        assert (st_.xi_norm != 0) == (reference != 0)
        assert st_.xi_class is qr_class(reference, p)
    assert exclude_by_squarefree(prof, 5).rule is Rule.SQUAREFREE
    assert exclude_by_squarefree(prof, 3).status is Status.OPEN
    rep = certify(g2)
    assert rep.verdict is Verdict.CERTIFIED_DGS
    assert rep.status_of(3).rule is Rule.ISOTROPY
    assert rep.status_of(5).rule is Rule.SQUAREFREE


def test_counterexample_undecided(counterexample):
    rep = certify(counterexample)
    assert rep.verdict is Verdict.UNDECIDED
    three = rep.status_of(3)
    assert three.status is Status.OPEN and three.nullity == 2
    x = three.witness
    assert any(x) and sum(v * v for v in x) % 3 == 0
    assert _in_kernel(rep.profile, x, 3)
    assert rep.status_of(2).status is Status.UNKNOWN
    assert rep.level2 is None


def test_not_controllable():
    rep = certify(complete_graph(5))
    assert rep.verdict is Verdict.NOT_CONTROLLABLE and rep.primes == []
    with pytest.raises(ValueError):
        exclude_level2(complete_graph(5), rep.profile)


def test_odd_only_rules_reject_two(g1):
    prof = profile(g1)
    with pytest.raises(ValueError):
        exclude_by_squarefree(prof, 2)
    with pytest.raises(ValueError):
        exclude_by_isotropy(g1, prof, 2)
    with pytest.raises(ValueError):
        exclude_by_isotropy(g1, prof, 3)  # 3 does not divide d_n


def test_exclusion_needs_rule():
    with pytest.raises(ValueError):
        PrimeStatus(3, Status.EXCLUDED)


def test_two_adic_part_above_one_is_unknown():
    g = parse_graph6(WIDE_2PART)
    rep = certify(g)
    assert p_adic_valuation(rep.profile.dn, 2) >= 2
    two = rep.status_of(2)
    assert two.status is Status.UNKNOWN and rep.verdict is Verdict.UNDECIDED


def test_effort_bound_surfaces_unknown_cofactor():
    g = parse_graph6(WIDE_2PART)
    rep = certify(g, effort_bound=1)
    residual = rep.profile.dn_factorization.residual
    assert residual == BIG_PRIMES[0] * BIG_PRIMES[1]
    unknown = [s for s in rep.primes if s.status is Status.UNKNOWN and s.prime == residual]
    assert unknown and rep.verdict is Verdict.UNDECIDED
    full = certify(g)
    assert set(BIG_PRIMES) <= set(full.profile.dn_factorization.primes())


def test_low_rank_primes():
    g = parse_graph6(LOW_RANK)
    prof = profile(g)
    three = exclude_by_isotropy(g, prof, 3)
    assert three.nullity >= 3 and three.status is Status.OPEN
    five = exclude_by_isotropy(g, prof, 5)
    assert five.nullity == 2 and five.status is Status.EXCLUDED
    # confirm exhaustively: no nonzero isotropic vector in the plane
    basis = nullspace_mod_p(transpose(prof.walk_matrix), 5)
    for s, t in itertools.product(range(5), repeat=2):
        if s or t:
            x = [(s * a + t * b) % 5 for a, b in zip(*basis)]
            assert sum(v * v for v in x) % 5 != 0


@st.composite
def planes(draw):
    p = draw(st.sampled_from([3, 5, 7, 11, 13]))
    n = draw(st.integers(2, 6))
    b1 = draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n))
    b2 = draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n))
    return p, b1, b2


@given(planes())
@settings(max_examples=300)
def test_rank2_closed_form_matches_enumeration(data):
    p, b1, b2 = data
    from dgscert.linalg import rank_mod_p
    if rank_mod_p([b1, b2], p) < 2:
        return
    brute = isotropic_by_enumeration([b1, b2], p, projective=False)
    projective = isotropic_by_enumeration([b1, b2], p)
    closed = _isotropic_rank2(b1, b2, p)
    assert (brute is None) == (projective is None) == (closed is None)
    for x in (projective, closed):
        if x is not None:
            assert any(x) and sum(v * v for v in x) % p == 0


def test_large_prime_plane_closed_form():
    # x^2 + y^2 is isotropic over F_p exactly when p = 1 (mod 4)
    assert ENUMERATION_LIMIT < 1000000007
    assert _isotropic_rank2([1, 0], [0, 1], 1000000007) is None
    x = _isotropic_rank2([1, 0, 0], [0, 1, 0], 1000000009)
    assert x is not None and any(x) and sum(v * v for v in x) % 1000000009 == 0


def _brute_level2(g: Graph, prof) -> set[tuple[int, ...]]:
    n = g.n
    a = adjacency_matrix(g)
    powers = [a]
    for _ in range(n - 2):
        powers.append(matmul(powers[-1], a))
    wt = transpose(prof.walk_matrix)
    out = set()
    for sup in itertools.combinations(range(n), 4):
        if any(sum(r[i] for i in sup) % 2 for r in wt):
            continue
        if all(sum(m[i][j] for i in sup for j in sup) % 4 == 0 for m in powers):
            out.add(sup)
    return out


def test_level2_scan_matches_matrix_powers():
    rng = random.Random(3)
    checked = 0
    while checked < 40:
        g = random_graph(rng.randint(6, 11), rng)
        prof = profile(g)
        if not prof.controllable:
            continue
        checked += 1
        cands = level2_candidates(g, prof)
        assert {c.support for c in cands if c.passes_mod4} == _brute_level2(g, prof)


@given(st.randoms(use_true_random=False))
@settings(max_examples=25, deadline=None)
def test_certify_relabel_invariant(rnd):
    n = rnd.randint(5, 11)
    g = random_graph(n, rnd)
    perm = list(range(n))
    rnd.shuffle(perm)
    a, b = certify(g), certify(g.relabel(perm))
    assert a.verdict is b.verdict
    assert [(s.prime, s.status, s.rule, s.nullity, s.xi_class) for s in a.primes] == \
        [(s.prime, s.status, s.rule, s.nullity, s.xi_class) for s in b.primes]


@pytest.mark.parametrize("name", ["g1", "g2", "counterexample"])
def test_fixture_relabel_invariance(name, request):
    g = request.getfixturevalue(name)
    rng = random.Random(7)
    base = certify(g)
    for _ in range(3):
        perm = list(range(g.n))
        rng.shuffle(perm)
        other = certify(g.relabel(perm))
        assert other.verdict is base.verdict
        assert [(s.prime, s.status) for s in other.primes] == [(s.prime, s.status) for s in base.primes]
