import random
from fractions import Fraction

import pytest

from dgscert.graph import complete_graph, parse_graph6, path_graph
from dgscert.qmatrix import (InapplicableError, InvalidQError, NotCospectralError, RationalOrthogonal,
                             check_membership, conjugate, emit_q_text, identity_q, level, parse_q_text,
                             permutation_q, q_problems, recover_q)
from dgscert.walk import profile

from properties import random_graph


def test_reference_q_is_member(counterexample, q3):
    assert q3.level == 3 and q3.n == 12
    assert not q3.is_permutation()
    h = check_membership(q3, counterexample)
    assert h is not None and h != counterexample
    back = recover_q(counterexample, h)
    assert back == q3
    # the level divides d_n
    assert profile(counterexample).dn % back.level == 0


def test_identity_q(g1):
    assert check_membership(identity_q(12), g1) == g1
    assert identity_q(3).is_permutation()


def test_permutation_q_relabels():
    rng = random.Random(2)
    for _ in range(20):
        g = random_graph(8, rng)
        perm = list(range(8))
        rng.shuffle(perm)
        assert check_membership(permutation_q(perm), g) == g.relabel(perm)


def test_recover_q_permutation():
    rng = random.Random(4)
    done = 0
    while done < 15:
        g = random_graph(rng.randint(6, 10), rng)
        if not profile(g).controllable:
            continue
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert recover_q(g, g.relabel(perm)) == permutation_q(perm)
        done += 1


def test_corrupted_q_reports_each_check(q3):
    rows = [list(r) for r in q3.scaled]
    rows[0][0] += 1
    problems = q_problems(rows, 3)
    kinds = {p.split(":")[0] for p in problems}
    assert {"orthogonality", "row sum", "column sum"} <= kinds
    assert any("row 0" in p for p in problems)
    with pytest.raises(InvalidQError) as exc:
        RationalOrthogonal.from_scaled(rows, 3)
    assert exc.value.problems == problems


def test_non_minimal_level(q3):
    doubled = [[2 * x for x in r] for r in q3.scaled]
    problems = q_problems(doubled, 6)
    assert problems and all(p.startswith("level") for p in problems)


def test_shape_problems():
    assert q_problems([[1, 0]], 1)[0].startswith("shape")
    assert q_problems([[1]], 0)[0].startswith("level")


def test_level_and_rational_round_trip(q3):
    rat = q3.rational()
    assert level(rat) == 3
    assert RationalOrthogonal.from_rational(rat) == q3
    assert q3.column(0) == [r[0] for r in q3.scaled]


def test_conjugate_is_exact(counterexample, q3):
    b = conjugate(q3, [[int(i == j) for j in range(12)] for i in range(12)])
    assert b == [[Fraction(int(i == j)) for j in range(12)] for i in range(12)]


def test_membership_fails_for_wrong_graph(q3):
    assert check_membership(q3, path_graph(12)) is None
    with pytest.raises(ValueError):
        check_membership(q3, path_graph(5))


def test_recover_q_errors(g1, counterexample):
    with pytest.raises(NotCospectralError):
        recover_q(g1, counterexample)
    with pytest.raises(NotCospectralError):
        recover_q(g1, path_graph(5))
    with pytest.raises(InapplicableError):
        recover_q(complete_graph(4), complete_graph(4))


def test_q_text_round_trip(q3):
    rows, ell = parse_q_text(emit_q_text(q3))
    assert RationalOrthogonal.from_scaled(rows, ell) == q3


@pytest.mark.parametrize("text,fragment", [
    ("", "first line"),
    ("2 1\n1 0\n", "expected 2 rows"),
    ("2 1\n1 0\n0\n", "row 1"),
    ("2 1\n1 x\n0 1\n", "non-integer"),
])
def test_q_text_errors(text, fragment):
    with pytest.raises(ValueError, match=fragment):
        parse_q_text(text)


def test_mate_from_membership_is_cospectral(counterexample, q3):
    from dgscert.graph import generalized_charpoly
    h = check_membership(q3, counterexample)
    assert generalized_charpoly(h) == generalized_charpoly(counterexample)
    assert parse_graph6("Kj~H_xDlXGY|") == h
