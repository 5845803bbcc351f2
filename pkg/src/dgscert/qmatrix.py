"""Rational orthogonal matrices with unit row sums, stored as (l*Q, l)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .graph import Graph, adjacency_matrix
from .linalg import (IntMatrix, RatMatrix, denominator_lcm, identity, inverse_rational,
                     matmul, shape, transpose)
from .ntheory import factor
from .walk import build_walk_matrix


class InvalidQError(ValueError):
    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


class NotCospectralError(ValueError):
    pass


class InapplicableError(ValueError):
    pass


def q_problems(scaled: Sequence[Sequence[int]], level: int) -> list[str]:
    """Every violated invariant of a scaled Q, one message each (empty if valid)."""
    try:
        n, m = shape(scaled)
    except ValueError as exc:
        return [f"shape: {exc}"]
    if n != m:
        return [f"shape: {n}x{m} is not square"]
    if level < 1:
        return [f"level: {level} is not a positive integer"]
    problems = []
    for i, r in enumerate(scaled):
        if sum(r) != level:
            problems.append(f"row sum: row {i} sums to {sum(r)}, expected {level}")
    for j in range(n):
        s = sum(r[j] for r in scaled)
        if s != level:
            problems.append(f"column sum: column {j} sums to {s}, expected {level}")
    gram = matmul(transpose(scaled), scaled)
    target = level * level
    for i in range(n):
        for j in range(n):
            want = target if i == j else 0
            if gram[i][j] != want:
                problems.append(f"orthogonality: (Q^T Q)[{i}][{j}] = {Fraction(gram[i][j], target)},"
                                f" expected {int(i == j)}")
    if level > 1:
        g = 0
        for r in scaled:
            for x in r:
                g = gcd(g, x)
        common = gcd(g, level)
        if common > 1:
            q = factor(common).primes()[0]
            problems.append(f"level: every entry is divisible by {q}, so {level} is not minimal")
    return problems


@dataclass(frozen=True)
class RationalOrthogonal:
    scaled: tuple[tuple[int, ...], ...]
    level: int

    def __post_init__(self) -> None:
        problems = q_problems(self.scaled, self.level)
        if problems:
            raise InvalidQError(problems)

    @classmethod
    def from_scaled(cls, scaled: Sequence[Sequence[int]], level: int) -> RationalOrthogonal:
        return cls(tuple(tuple(r) for r in scaled), level)

    @classmethod
    def from_rational(cls, q: Sequence[Sequence[Fraction]]) -> RationalOrthogonal:
        ell = level(q)
        return cls(tuple(tuple(int(x * ell) for x in r) for r in q), ell)

    @property
    def n(self) -> int:
        return len(self.scaled)

    def rational(self) -> RatMatrix:
        return [[Fraction(x, self.level) for x in r] for r in self.scaled]

    def is_permutation(self) -> bool:
        return self.level == 1

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.scaled]


def level(q: Sequence[Sequence[Fraction]]) -> int:
    return denominator_lcm(q)


def conjugate(q: RationalOrthogonal, a: Sequence[Sequence[int]]) -> RatMatrix:
    """Q^T A Q, exactly."""
    s = [list(r) for r in q.scaled]
    num = matmul(matmul(transpose(s), a), s)
    d = q.level * q.level
    return [[Fraction(x, d) for x in r] for r in num]


def _as_adjacency(b: RatMatrix) -> IntMatrix | None:
    n = len(b)
    out = []
    for i, r in enumerate(b):
        row = []
        for j, x in enumerate(r):
            if x not in (0, 1) or (i == j and x != 0) or b[j][i] != x:
                return None
            row.append(int(x))
        out.append(row)
    return out if len(out) == n else None


def check_membership(q: RationalOrthogonal, g: Graph) -> Graph | None:
    """The graph H with A(H) = Q^T A(G) Q, or None when that is not an adjacency matrix."""
    if q.n != g.n:
        raise ValueError(f"Q is {q.n}x{q.n} but the graph has {g.n} vertices")
    adj = _as_adjacency(conjugate(q, adjacency_matrix(g)))
    return None if adj is None else Graph.from_matrix(adj)


def recover_q(g: Graph, h: Graph) -> RationalOrthogonal:
    """The unique Q with Q^T A(G) Q = A(H), Qe = e; it satisfies Q^T W_G = W_H."""
    if g.n != h.n:
        raise NotCospectralError("graphs have different orders")
    wg, wh = build_walk_matrix(g), build_walk_matrix(h)
    try:
        wg_inv = inverse_rational(wg)
        inverse_rational(wh)
    except ArithmeticError as exc:
        raise InapplicableError("both graphs must be controllable") from exc
    qt = matmul(wh, wg_inv)
    q = transpose(qt)
    try:
        rq = RationalOrthogonal.from_rational(q)
    except InvalidQError as exc:
        raise NotCospectralError(f"recovered matrix is not a valid Q: {exc}") from exc
    if conjugate(rq, adjacency_matrix(g)) != [[Fraction(x) for x in r] for r in adjacency_matrix(h)]:
        raise NotCospectralError("Q^T A(G) Q differs from A(H)")
    return rq


def parse_q_text(text: str) -> tuple[list[list[int]], int]:
    """First line "n l", then n rows of n integers (the entries of l*Q).

    Returns the raw data; validation is left to :class:`RationalOrthogonal`
    so callers can report each violated invariant.
    """
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise ValueError("first line must be 'n level'")
    try:
        n, ell = int(lines[0][0]), int(lines[0][1])
        rows = [[int(x) for x in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise ValueError(f"non-integer entry: {exc}") from None
    if len(rows) != n:
        raise ValueError(f"expected {n} rows, got {len(rows)}")
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValueError(f"row {i} has {len(r)} entries, expected {n}")
    return rows, ell


def emit_q_text(q: RationalOrthogonal) -> str:
    lines = [f"{q.n} {q.level}"] + [" ".join(str(x) for x in r) for r in q.scaled]
    return "\n".join(lines) + "\n"


def identity_q(n: int) -> RationalOrthogonal:
    return RationalOrthogonal.from_scaled(identity(n), 1)


def permutation_q(perm: Sequence[int]) -> RationalOrthogonal:
    """Q with Q^T A(G) Q = A(G relabelled by perm)."""
    n = len(perm)
    m = [[0] * n for _ in range(n)]
    for v, pv in enumerate(perm):
        m[v][pv] = 1
    return RationalOrthogonal.from_scaled(m, 1)
