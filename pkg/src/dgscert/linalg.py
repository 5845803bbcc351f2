"""Exact integer matrix algebra.

Matrices are plain ``list[list[int]]`` in row-major order; nothing here ever
touches floating point.  Rational results use :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .ntheory import is_prime

IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]
IntPolynomial = tuple[int, ...]  # ascending degree


class DimensionError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SnfResult:
    """``left @ diag(diagonal) @ right`` reproduces the input matrix."""

    diagonal: tuple[int, ...]
    left: IntMatrix
    right: IntMatrix

    @property
    def last(self) -> int:
        return self.diagonal[-1]


def shape(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    if not m or not m[0]:
        raise DimensionError("matrix must have positive dimensions")
    cols = len(m[0])
    if any(len(r) != cols for r in m):
        raise DimensionError("ragged matrix")
    return len(m), cols


def _square(m: Sequence[Sequence[int]]) -> int:
    r, c = shape(m)
    if r != c:
        raise DimensionError(f"expected a square matrix, got {r}x{c}")
    return r


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def diag(entries: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
    rows = len(entries) if rows is None else rows
    cols = len(entries) if cols is None else cols
    out = [[0] * cols for _ in range(rows)]
    for i, d in enumerate(entries):
        out[i][i] = d
    return out


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    n = _square(m)
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def char_poly(m: Sequence[Sequence[int]]) -> IntPolynomial:
    """Coefficients of det(xI - m), ascending, via the Faddeev-LeVerrier recurrence.

    The divisions by ``k`` are exact for integer input.
    """
    n = _square(m)
    a = [list(r) for r in m]
    c = [0] * (n + 1)
    c[n] = 1
    acc = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        acc = matmul(a, acc)
        for i in range(n):
            acc[i][i] += c[n - k + 1]
        am = matmul(a, acc)
        tr = sum(am[i][i] for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0
        c[n - k] = q
    return tuple(c)


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _snf(m: Sequence[Sequence[int]], track: bool):
    rows, cols = shape(m)
    a = [list(r) for r in m]
    u = identity(rows) if track else None
    v = identity(cols) if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            for r in u:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        if track:
            v[i], v[j] = v[j], v[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        rd, rs = a[dst], a[src]
        for k in range(cols):
            if rs[k]:
                rd[k] += c * rs[k]
        if track:
            for r in u:
                r[src] -= c * r[dst]

    def add_col(dst, src, c):
        # col_dst += c * col_src
        for r in a:
            if r[src]:
                r[dst] += c * r[src]
        if track:
            vd, vs = v[dst], v[src]
            for k in range(cols):
                if vd[k]:
                    vs[k] -= c * vd[k]

    diagonal = []
    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            dirty = False
            piv = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // piv))
            small = min((i for i in range(t, rows) if a[i][t]), key=lambda i: abs(a[i][t]))
            if small != t:
                swap_rows(t, small)
                continue
            if any(a[i][t] for i in range(t + 1, rows)):
                continue
            piv = a[t][t]
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // piv))
            small = min((j for j in range(t, cols) if a[t][j]), key=lambda j: abs(a[t][j]))
            if small != t:
                swap_cols(t, small)
                continue
            if any(a[t][j] for j in range(t + 1, cols)):
                continue
            piv = a[t][t]
            for i in range(t + 1, rows):
                if any(x % piv for x in a[i][t + 1:]):
                    add_row(t, i, 1)
                    dirty = True
                    break
            if not dirty:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                for r in u:
                    r[t] = -r[t]
        diagonal.append(a[t][t])
    diagonal.extend([0] * (min(rows, cols) - len(diagonal)))
    return tuple(diagonal), u, v


def smith_normal_form(m: Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form with unimodular ``left``/``right`` such that
    ``left @ diag(d) @ right == m``.

    Pivoting picks the smallest nonzero entry in absolute value.
    """
    d, u, v = _snf(m, track=True)
    return SnfResult(d, u, v)


def smith_diagonal(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors only; skips the transform bookkeeping."""
    return _snf(m, track=False)[0]


def _rref_mod_p(m: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    rows, cols = shape(m)
    a = [[x % p for x in r] for r in m]
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                ai, ar = a[i], a[r]
                a[i] = [(x - f * y) % p for x, y in zip(ai, ar)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank_mod_p(m: Sequence[Sequence[int]], p: int) -> int:
    _require_prime(p)
    return len(_rref_mod_p(m, p)[1])


def nullspace_mod_p(m: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Right nullspace of ``m`` over F_p.

    The basis is returned in reduced echelon form, so every vector has leading
    coordinate 1 and the basis is canonical for the subspace.
    """
    _require_prime(p)
    _, cols = shape(m)
    a, pivots = _rref_mod_p(m, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * cols
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = -a[i][f] % p
        basis.append(x)
    if not basis:
        return []
    echelon, piv = _rref_mod_p(basis, p)
    return echelon[:len(piv)]


def inverse_rational(m: Sequence[Sequence[int]]) -> RatMatrix:
    n = _square(m)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(m)]
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c]), None)
        if pr is None:
            raise SingularMatrixError("matrix is singular")
        a[c], a[pr] = a[pr], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]


def denominator_lcm(m: Sequence[Sequence[Fraction]]) -> int:
    """Least positive ``l`` with ``l * m`` integral."""
    return lcm(*(Fraction(x).denominator for r in m for x in r))
