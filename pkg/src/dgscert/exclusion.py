"""Prime-by-prime exclusion of possible levels and the overall DGS verdict.

For a controllable graph every rational orthogonal Q with Qe = e that maps
A(G) to another adjacency matrix has a level dividing d_n, the last invariant
factor of W.  Each prime of d_n is either excluded as a divisor of the level
or left standing; when nothing stands the level is 1 and Q is a permutation.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .graph import Graph
from .linalg import nullspace_mod_p, transpose
from .ntheory import DEFAULT_EFFORT, QRClass, p_adic_valuation, qr_class, sqrt_mod
from .walk import WalkProfile, profile as build_profile

# rank-2 isotropy is decided by scanning projective points below this prime
ENUMERATION_LIMIT = 20_000


class Status(str, enum.Enum):
    EXCLUDED = "EXCLUDED"
    OPEN = "OPEN"
    UNKNOWN = "UNKNOWN"


class Rule(str, enum.Enum):
    SQUAREFREE = "SQUAREFREE"
    ISOTROPY = "ISOTROPY"
    LEVEL2 = "LEVEL2"
    NONE = "NONE"


class Verdict(str, enum.Enum):
    CERTIFIED_DGS = "CERTIFIED_DGS"
    UNDECIDED = "UNDECIDED"
    NOT_CONTROLLABLE = "NOT_CONTROLLABLE"


@dataclass(frozen=True)
class Level2Candidate:
    support: tuple[int, int, int, int]
    passes_mod4: bool
    # first k with u^T A^k u != 0 (mod 4), None when the candidate passes
    failing_power: int | None = None

    def indicator(self, n: int) -> list[int]:
        return [int(i in self.support) for i in range(n)]


@dataclass(frozen=True)
class PrimeStatus:
    prime: int
    status: Status
    rule: Rule = Rule.NONE
    witness: tuple | None = None
    detail: str = ""
    # isotropy data, filled when that test ran
    nullity: int | None = None
    xi_norm: int | None = None
    xi_class: QRClass | None = None

    def __post_init__(self) -> None:
        if self.status is Status.EXCLUDED and self.rule is Rule.NONE:
            raise ValueError("an exclusion must name its rule")


@dataclass
class CertificationReport:
    verdict: Verdict
    profile: WalkProfile
    primes: list[PrimeStatus]
    level2: PrimeStatus | None = None
    level2_candidates: list[Level2Candidate] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    def status_of(self, p: int) -> PrimeStatus | None:
        return next((s for s in self.primes if s.prime == p), None)


def _require_odd(p: int) -> None:
    if p == 2:
        raise ValueError("this criterion only applies to odd primes")


def exclude_by_squarefree(prof: WalkProfile, p: int) -> PrimeStatus:
    """Exclude ``p`` when it divides det(W) exactly once."""
    _require_odd(p)
    if not prof.controllable:
        raise ValueError("graph is not controllable")
    k = p_adic_valuation(prof.det, p)
    if k == 1:
        return PrimeStatus(p, Status.EXCLUDED, Rule.SQUAREFREE, detail="v_p(det W) = 1")
    return PrimeStatus(p, Status.OPEN, Rule.NONE, detail=f"v_p(det W) = {k}")


def _qform(x: Sequence[int], y: Sequence[int], p: int) -> int:
    return sum(a * b for a, b in zip(x, y)) % p


def isotropic_by_enumeration(basis: Sequence[Sequence[int]], p: int,
                             projective: bool = True) -> list[int] | None:
    """Scan span(basis) over F_p for a nonzero x with x^T x = 0.

    With ``projective`` only one representative per line is tried (the form
    scales by squares, so that suffices); otherwise every nonzero vector is.
    """
    d = len(basis)
    n = len(basis[0]) if d else 0

    def points(dim: int):
        for lead in range(dim):
            heads = [1] if projective else range(1, p)
            for h in heads:
                for tail in _all_vectors(dim - lead - 1, p):
                    yield (0,) * lead + (h,) + tail

    for coeffs in points(d):
        x = [sum(c * b[i] for c, b in zip(coeffs, basis)) % p for i in range(n)]
        if _qform(x, x, p) == 0:
            return x
    return None


def _all_vectors(dim: int, p: int):
    if dim == 0:
        yield ()
        return
    for head in range(p):
        for rest in _all_vectors(dim - 1, p):
            yield (head,) + rest


def _isotropic_rank2(b1: Sequence[int], b2: Sequence[int], p: int) -> list[int] | None:
    """Closed form for a plane: q(s b1 + t b2) = a s^2 + 2 b s t + c t^2."""
    a, b, c = _qform(b1, b1, p), _qform(b1, b2, p), _qform(b2, b2, p)
    if c == 0:
        return [x % p for x in b2]
    root = sqrt_mod(b * b - a * c, p)
    if root is None:
        return None
    # s = 1, c t^2 + 2 b t + a = 0
    t = (-b + root) * pow(c, -1, p) % p
    return [(x + t * y) % p for x, y in zip(b1, b2)]


def exclude_by_isotropy(g: Graph, prof: WalkProfile, p: int) -> PrimeStatus:
    """Exclude ``p`` when W^T x = 0, x^T x = 0 (mod p) has only the zero solution."""
    _require_odd(p)
    basis = nullspace_mod_p(transpose(prof.walk_matrix), p)
    dim = len(basis)
    if dim == 0:
        raise ValueError(f"{p} does not divide d_n: W is invertible mod {p}")
    if dim == 1:
        xi = basis[0]
        val = _qform(xi, xi, p)
        cls = qr_class(val, p)
        if val:
            return PrimeStatus(p, Status.EXCLUDED, Rule.ISOTROPY, tuple(xi),
                               f"xi^T xi = {val} ({cls.value})", 1, val, cls)
        return PrimeStatus(p, Status.OPEN, Rule.NONE, tuple(xi),
                           "xi^T xi = 0: isotropic solution", 1, 0, cls)
    if dim == 2:
        if p <= ENUMERATION_LIMIT:
            x = isotropic_by_enumeration(basis, p)
            note = "rank_p(W) = n-2, projective scan of the solution plane"
        else:
            x = _isotropic_rank2(basis[0], basis[1], p)
            note = "rank_p(W) = n-2, discriminant test on the solution plane"
        if x is None:
            return PrimeStatus(p, Status.EXCLUDED, Rule.ISOTROPY, None,
                               note + ": no isotropic vector", 2)
        return PrimeStatus(p, Status.OPEN, Rule.NONE, tuple(x), note + ": isotropic vector found", 2)
    return PrimeStatus(
        p, Status.OPEN, Rule.NONE, None,
        f"solution space has dimension {dim} >= 3; an isotropic vector always exists", dim)


def level2_candidates(g: Graph, prof: WalkProfile) -> list[Level2Candidate]:
    n = g.n
    if n < 4:
        return []
    # row i of W mod 2 as a bitmask; W^T u = 0 (mod 2) iff the chosen rows XOR to 0
    rows = [sum(((x & 1) << j) for j, x in enumerate(r)) for r in prof.walk_matrix]
    nbrs = [g.neighbors(v) for v in range(n)]
    out = []
    for support in combinations(range(n), 4):
        if rows[support[0]] ^ rows[support[1]] ^ rows[support[2]] ^ rows[support[3]]:
            continue
        vec = [int(i in support) for i in range(n)]
        failing = None
        for k in range(1, n):
            vec = [sum(vec[u] for u in nb) % 4 for nb in nbrs]
            if sum(vec[i] for i in support) % 4:
                failing = k
                break
        out.append(Level2Candidate(support, failing is None, failing))
    return out


def exclude_level2(g: Graph, prof: WalkProfile) -> tuple[PrimeStatus, list[Level2Candidate]]:
    """Rule out level exactly 2 by the weight-four candidate scan."""
    if not prof.controllable:
        raise ValueError("graph is not controllable")
    cands = level2_candidates(g, prof)
    passing = [c.support for c in cands if c.passes_mod4]
    if passing:
        return (PrimeStatus(2, Status.OPEN, Rule.NONE, tuple(passing),
                            f"{len(passing)} of {len(cands)} candidates satisfy u^T A^k u = 0 (mod 4)"),
                cands)
    return (PrimeStatus(2, Status.EXCLUDED, Rule.LEVEL2, None,
                        f"none of {len(cands)} candidates satisfy u^T A^k u = 0 (mod 4)"),
            cands)


def certify(g: Graph, effort_bound: int = DEFAULT_EFFORT, *, seed: int = 0,
            prof: WalkProfile | None = None) -> CertificationReport:
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    if prof is None:
        prof = build_profile(g, effort_bound, seed=seed)
    timings["profile"] = time.perf_counter() - t0
    if not prof.controllable:
        return CertificationReport(Verdict.NOT_CONTROLLABLE, prof, [], timings=timings)

    t0 = time.perf_counter()
    ledger: list[PrimeStatus] = []
    dn_fact = prof.dn_factorization
    for p in dn_fact.primes():
        if p == 2:
            continue
        st = exclude_by_squarefree(prof, p)
        if st.status is Status.OPEN:
            st = exclude_by_isotropy(g, prof, p)
        ledger.append(st)
    if not dn_fact.complete:
        ledger.append(PrimeStatus(dn_fact.residual, Status.UNKNOWN, Rule.NONE,
                                  detail="composite cofactor of d_n not factored within effort bound"))
    timings["odd_primes"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    level2 = None
    cands: list[Level2Candidate] = []
    v2 = p_adic_valuation(prof.dn, 2)
    odd_clear = all(s.status is Status.EXCLUDED for s in ledger)
    if v2 >= 2:
        two = PrimeStatus(2, Status.UNKNOWN, Rule.NONE,
                          detail=f"v_2(d_n) = {v2}: no criterion for levels divisible by 4")
    elif v2 == 1 and odd_clear:
        level2, cands = exclude_level2(g, prof)
        two = level2
    elif v2 == 1:
        two = PrimeStatus(2, Status.UNKNOWN, Rule.NONE,
                          detail="level-2 scan needs every odd prime excluded first")
    else:
        two = None
    if two is not None:
        ledger.insert(0, two)
    timings["level2"] = time.perf_counter() - t0

    ok = all(s.status is Status.EXCLUDED for s in ledger)
    verdict = Verdict.CERTIFIED_DGS if ok else Verdict.UNDECIDED
    return CertificationReport(verdict, prof, ledger, level2, cands, timings)

