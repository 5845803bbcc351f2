"""Walk matrix W = [e, Ae, ..., A^(n-1)e] and its arithmetic profile."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .linalg import IntMatrix, det, smith_diagonal
from .ntheory import DEFAULT_EFFORT, Factorization, factor, p_adic_valuation


class IndeterminateError(ArithmeticError):
    """A property depends on a factorization that could not be completed."""


def walk_columns(g: Graph, count: int | None = None) -> list[list[int]]:
    """The vectors e, Ae, A^2 e, ... (``count`` of them, default n)."""
    count = g.n if count is None else count
    nbrs = [g.neighbors(v) for v in range(g.n)]
    col = [1] * g.n
    cols = [col]
    for _ in range(count - 1):
        col = [sum(col[u] for u in nb) for nb in nbrs]
        cols.append(col)
    return cols


def build_walk_matrix(g: Graph) -> IntMatrix:
    cols = walk_columns(g)
    return [[c[i] for c in cols] for i in range(g.n)]


@dataclass(frozen=True)
class WalkProfile:
    n: int
    walk_matrix: IntMatrix
    det: int
    snf_diagonal: tuple[int, ...]
    det_factorization: Factorization | None
    dn_factorization: Factorization | None
    controllable: bool
    in_fn: bool | None  # None when the factorization is incomplete

    @property
    def dn(self) -> int:
        return self.snf_diagonal[-1]


def _dn_factorization(dn: int, det_fact: Factorization, effort_bound: int, seed: int) -> Factorization:
    if not det_fact.complete:
        return factor(dn, effort_bound, seed=seed)
    # d_n | det, so the primes of det already cover d_n
    pairs = []
    for p, _ in det_fact.factors:
        k = p_adic_valuation(dn, p)
        if k:
            pairs.append((p, k))
    return Factorization(1, tuple(pairs), 1, det_fact.probabilistic)


def fn_membership(n: int, det_w: int, det_fact: Factorization | None) -> bool:
    """Controllable, 2-adic valuation exactly floor(n/2), odd part square-free."""
    if det_w == 0:
        return False
    if det_fact is None:
        raise IndeterminateError("det(W) has not been factored")
    # trial division always extracts 2, and a repeated known prime settles it
    if det_fact.exponent(2) != n // 2 or any(e > 1 for p, e in det_fact.factors if p != 2):
        return False
    if not det_fact.complete:
        raise IndeterminateError("det(W) is not completely factored")
    return True


def profile(g: Graph, effort_bound: int = DEFAULT_EFFORT, *, seed: int = 0) -> WalkProfile:
    w = build_walk_matrix(g)
    d = det(w)
    diag = smith_diagonal(w)
    if d == 0:
        return WalkProfile(g.n, w, 0, diag, None, None, False, False)
    det_fact = factor(d, effort_bound, seed=seed)
    dn_fact = _dn_factorization(diag[-1], det_fact, effort_bound, seed)
    try:
        in_fn = fn_membership(g.n, d, det_fact)
    except IndeterminateError:
        in_fn = None
    return WalkProfile(g.n, w, d, diag, det_fact, dn_fact, True, in_fn)


def in_family_fn(p: WalkProfile) -> bool:
    """Membership in F_n; raises :class:`IndeterminateError` rather than guess."""
    if not p.controllable:
        return False
    return fn_membership(p.n, p.det, p.det_factorization)


def walk_sums(g: Graph, count: int) -> list[int]:
    """Total walk counts e^T A^k e for k = 0..count-1."""
    return [sum(c) for c in walk_columns(g, count)]
