"""Primality, factorization with honest incompleteness, valuations."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

TRIAL_BOUND = 10**6
DEFAULT_EFFORT = 10**5

# First 13 primes as Miller-Rabin bases are deterministic below this bound.
DETERMINISTIC_MR_BOUND = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
PROBABILISTIC_ROUNDS = 64


@lru_cache(maxsize=None)
def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if flags[i]:
            flags[i * i::i] = bytes(len(range(i * i, limit + 1, i)))
    return tuple(i for i, f in enumerate(flags) if f)


@lru_cache(maxsize=None)
def _prime_blocks(limit: int, size: int = 256) -> tuple[tuple[int, tuple[int, ...]], ...]:
    ps = _sieve(limit)
    return tuple((prod(ps[k:k + size]), ps[k:k + size]) for k in range(0, len(ps), size))


def _strong_probable_prime(x: int, a: int, d: int, s: int) -> bool:
    y = pow(a, d, x)
    if y == 1 or y == x - 1:
        return True
    for _ in range(s - 1):
        y = y * y % x
        if y == x - 1:
            return True
    return False


def is_prime(x: int, *, seed: int = 0) -> bool:
    """Miller-Rabin; deterministic below ``DETERMINISTIC_MR_BOUND``.

    Larger inputs get ``PROBABILISTIC_ROUNDS`` random bases drawn from a
    generator seeded by ``seed``.
    """
    if x < 2:
        return False
    for p in _MR_BASES:
        if x % p == 0:
            return x == p
    d, s = x - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    if x < DETERMINISTIC_MR_BOUND:
        bases = _MR_BASES
    else:
        rng = random.Random(seed ^ x)
        bases = [rng.randrange(2, x - 1) for _ in range(PROBABILISTIC_ROUNDS)]
    return all(_strong_probable_prime(x, a, d, s) for a in bases)


def is_proven_prime(x: int) -> bool:
    """True when :func:`is_prime` answered deterministically."""
    return x < DETERMINISTIC_MR_BOUND and is_prime(x)


@dataclass(frozen=True)
class Factorization:
    """``sign * prod(p**e) * residual`` equals the factored value.

    ``residual`` is 1 when the factorization is complete, otherwise a
    composite cofactor that resisted the effort bound.
    """

    sign: int
    factors: tuple[tuple[int, int], ...]
    residual: int = 1
    probabilistic: bool = False

    @property
    def complete(self) -> bool:
        return self.residual == 1

    @property
    def value(self) -> int:
        return self.sign * self.residual * prod(p**e for p, e in self.factors)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def __str__(self) -> str:
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if self.residual != 1:
            parts.append(f"[{self.residual}]")
        body = "*".join(parts) or "1"
        return f"-{body}" if self.sign < 0 else body


def _pollard_brent(x: int, budget: int, rng: random.Random) -> tuple[int | None, int]:
    """One Brent-rho run with random parameters; returns (factor, iterations used)."""
    y, c, m = rng.randrange(1, x), rng.randrange(1, x), 128
    g = r = q = 1
    used = 0
    ys = x_ = y
    while g == 1:
        x_ = y
        for _ in range(r):
            y = (y * y + c) % x
        used += r
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % x
                q = q * abs(x_ - y) % x
            g = gcd(q, x)
            k += m
        used += min(r, k)
        r <<= 1
        if used > budget and g == 1:
            return None, used
    if g == x:
        # the batched product overshot; step one at a time
        while True:
            ys = (ys * ys + c) % x
            g = gcd(abs(x_ - ys), x)
            if g > 1:
                break
    return (g if g != x else None), used


def _split(x: int, budget: int, rng: random.Random) -> int | None:
    remaining = budget
    while remaining > 0:
        f, used = _pollard_brent(x, remaining, rng)
        remaining -= used
        if f is not None:
            return f
    return None


def factor(x: int, effort_bound: int = DEFAULT_EFFORT, *, seed: int = 0) -> Factorization:
    """Trial division below ``TRIAL_BOUND`` then Pollard rho.

    ``effort_bound`` caps rho iterations spent on each composite cofactor;
    cofactors that survive are reported in ``residual``.
    """
    if x == 0:
        raise ValueError("cannot factor 0")
    sign = -1 if x < 0 else 1
    x = abs(x)
    found: dict[int, int] = {}
    for block, ps in _prime_blocks(TRIAL_BOUND):
        if x == 1:
            break
        if gcd(x, block) == 1:
            continue
        for p in ps:
            while x % p == 0:
                x //= p
                found[p] = found.get(p, 0) + 1
    rng = random.Random(seed)
    stuck: list[int] = []
    probabilistic = False
    stack = [x] if x > 1 else []
    while stack:
        y = stack.pop()
        for p in found:
            while y % p == 0:
                y //= p
                found[p] += 1
        if y == 1:
            continue
        if is_prime(y, seed=seed):
            probabilistic |= y >= DETERMINISTIC_MR_BOUND
            found[y] = found.get(y, 0) + 1
            continue
        r = isqrt(y)
        if r * r == y:
            stack += [r, r]
            continue
        f = _split(y, effort_bound, rng)
        if f is None:
            stuck.append(y)
        else:
            stack += [f, y // f]
    residual = 1
    for y in stuck:
        for p in found:
            while y % p == 0:
                y //= p
                found[p] += 1
        if is_prime(y, seed=seed):
            found[y] = found.get(y, 0) + 1
        else:
            residual *= y
    return Factorization(sign, tuple(sorted(found.items())), residual, probabilistic)


def p_adic_valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    if p < 2:
        raise ValueError(f"{p} is not prime")
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def is_squarefree(f: Factorization) -> bool:
    if not f.complete:
        raise ValueError("square-freeness undecidable from an incomplete factorization")
    return all(e == 1 for _, e in f.factors)


class QRClass(str, enum.Enum):
    ZERO = "zero"
    RESIDUE = "residue"
    NONRESIDUE = "nonresidue"


def qr_class(a: int, p: int) -> QRClass:
    """Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return QRClass.ZERO
    return QRClass.RESIDUE if pow(a, (p - 1) // 2, p) == 1 else QRClass.NONRESIDUE


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of ``a`` modulo the odd prime ``p`` (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r
