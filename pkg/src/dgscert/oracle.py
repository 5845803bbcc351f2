"""Brute-force ground truth for small n.

Every labelled graph is keyed by its exact generalized characteristic
polynomial pair; graphs sharing a key are then split into isomorphism
classes.  A class is DGS iff it is alone in its bucket.
"""

from __future__ import annotations

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, TextIO

import numpy as np

from . import kernels
from .exclusion import CertificationReport, Status, Verdict, certify, exclude_by_isotropy, exclude_level2
from .graph import Graph, GraphFormatError, emit_graph6, generalized_charpoly, parse_graph6
from .ntheory import factor
from .qmatrix import recover_q

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_N = 7
CHUNK = 1 << 16


def enumerate_labeled_graphs(n: int) -> Iterator[Graph]:
    """All 2^(n(n-1)/2) labelled graphs on n vertices, in edge-mask order."""
    _check_exhaustive(n)
    for mask in range(1 << (n * (n - 1) // 2)):
        yield Graph.from_edge_mask(n, mask)


def _check_exhaustive(n: int) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive enumeration stops at n = {EXHAUSTIVE_MAX_N}; "
                         "feed canonical representatives through ingest_graph6_stream instead")


def _refine_union(g: Graph, h: Graph) -> list[int]:
    """Colour refinement on the disjoint union, so colours are comparable."""
    n = g.n
    nbrs = [g.neighbors(v) for v in range(n)] + [[u + n for u in h.neighbors(v)] for v in range(n)]
    colors = [len(nb) for nb in nbrs]
    k = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in nbrs[v]))) for v in range(2 * n)]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        colors = [ranks[s] for s in sigs]
        if len(ranks) == k:
            return colors
        k = len(ranks)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking over colour-refined candidate maps.  Different orders give False."""
    if g.n != h.n:
        return False
    n = g.n
    if g.num_edges != h.num_edges:
        return False
    colors = _refine_union(g, h)
    cg, ch = colors[:n], colors[n:]
    if sorted(cg) != sorted(ch):
        return False
    # map rarest colour classes first
    freq = Counter(cg)
    order = sorted(range(n), key=lambda v: (freq[cg[v]], cg[v], v))
    cands = {c: [w for w in range(n) if ch[w] == c] for c in freq}
    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in cands[cg[v]]:
            if used[w]:
                continue
            ok = True
            for u in order[:i]:
                if g.has_edge(v, u) != h.has_edge(w, image[u]):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used[w] = True
            if extend(i + 1):
                return True
            used[w] = False
        image[v] = -1
        return False

    return extend(0)


@dataclass
class MateReport:
    graph: Graph
    mates: list[Graph]

    @property
    def is_dgs(self) -> bool:
        return not self.mates


def _gcp_key(g: Graph) -> tuple:
    a, c = generalized_charpoly(g)
    return a, c


def find_gcs_mates(g: Graph, universe: Iterable[Graph] | None = None) -> MateReport:
    """Nonisomorphic graphs in ``universe`` with the same generalized spectrum as ``g``.

    With no universe, the exhaustive index for ``g.n`` is used (n <= 7).
    """
    if universe is None:
        index = gcs_index(g.n)
        key = index.key_of(g)
        canon = canonical_form(g)
        mates = [Graph.from_edge_mask(g.n, m) for m in index.buckets.get(key, ()) if m != canon]
        return MateReport(g, mates)
    key = _gcp_key(g)
    classes: list[Graph] = []
    for h in universe:
        if h.n != g.n or _gcp_key(h) != key:
            continue
        if any(is_isomorphic(h, c) for c in classes):
            continue
        classes.append(h)
    mates = [c for c in classes if not is_isomorphic(c, g)]
    mates.sort(key=emit_graph6)
    return MateReport(g, mates)


def canonical_form(g: Graph) -> int:
    return int(kernels.canonical_masks(g.n, np.array([g.edge_mask()], dtype=np.uint64))[0])


@dataclass
class GcsIndex:
    """Isomorphism classes on n vertices grouped by generalized characteristic polynomials.

    ``buckets`` maps the exact coefficient tuple (A then complement, monic
    terms dropped) to the sorted canonical edge masks of the classes sharing it.
    """

    n: int
    buckets: dict[tuple[int, ...], list[int]]
    labeled_count: int
    backend: str

    def key_of(self, g: Graph) -> tuple[int, ...]:
        return tuple(int(x) for x in kernels.charpoly_keys(
            g.n, np.array([g.edge_mask()], dtype=np.uint64))[0])

    def classes(self) -> list[int]:
        return sorted(m for ms in self.buckets.values() for m in ms)

    def mates_of(self, canon: int) -> list[int]:
        for ms in self.buckets.values():
            if canon in ms:
                return [m for m in ms if m != canon]
        raise KeyError(canon)

    def class_map(self) -> dict[int, tuple[int, ...]]:
        return {m: key for key, ms in self.buckets.items() for m in ms}

    def non_dgs_classes(self) -> list[int]:
        return sorted(m for ms in self.buckets.values() if len(ms) > 1 for m in ms)


def build_gcs_index(n: int, masks: Iterable[int] | None = None, backend=None) -> GcsIndex:
    """Bucket graphs by exact key and deduplicate to isomorphism classes inside buckets.

    ``masks`` defaults to every labelled graph on n vertices.
    """
    impl = backend or kernels
    if masks is None:
        _check_exhaustive(n)
        total = 1 << (n * (n - 1) // 2)
        chunks: Iterable[np.ndarray] = (
            np.arange(s, min(s + CHUNK, total), dtype=np.uint64) for s in range(0, total, CHUNK))
    else:
        arr = np.fromiter((int(m) for m in masks), dtype=np.uint64)
        total = len(arr)
        chunks = (arr[s:s + CHUNK] for s in range(0, total, CHUNK))
    buckets: dict[tuple[int, ...], set[int]] = {}
    for chunk in chunks:
        keys = impl.charpoly_keys(n, chunk)
        # masks have at most 45 bits, so the signed view is lossless
        canon = impl.canonical_masks(n, chunk).astype(np.int64)
        rows = np.unique(np.concatenate([keys, canon[:, None]], axis=1), axis=0)
        for row in rows.tolist():
            buckets.setdefault(tuple(row[:-1]), set()).add(row[-1])
    return GcsIndex(n, {k: sorted(v) for k, v in sorted(buckets.items())}, total, impl.BACKEND)


@lru_cache(maxsize=None)
def gcs_index(n: int) -> GcsIndex:
    return build_gcs_index(n)


@dataclass
class PairCheck:
    graph: str
    mate: str
    level: int
    dn: int
    level_divides_dn: bool
    odd_primes_with_solution: dict[int, bool]
    level2_candidate_passes: bool | None


@dataclass
class ValidationReport:
    n: int
    labeled_graphs: int
    classes: int
    non_dgs_classes: int
    controllable_classes: int
    verdicts: dict[str, int]
    soundness_violations: list[str] = field(default_factory=list)
    undecided_without_mate: int = 0
    undecided_with_mate: int = 0
    pair_checks: list[PairCheck] = field(default_factory=list)
    level_violations: list[str] = field(default_factory=list)
    level_histogram: dict[int, int] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.soundness_violations and not self.level_violations

    def summary(self) -> dict:
        return {
            "n": self.n,
            "labeled_graphs": self.labeled_graphs,
            "isomorphism_classes": self.classes,
            "non_dgs_classes": self.non_dgs_classes,
            "controllable_classes": self.controllable_classes,
            "verdicts": dict(sorted(self.verdicts.items())),
            "soundness_violations": len(self.soundness_violations),
            "undecided_without_mate": self.undecided_without_mate,
            "undecided_with_mate": self.undecided_with_mate,
            "controllable_pairs_checked": len(self.pair_checks),
            "level_violations": len(self.level_violations),
            "level_histogram": {str(k): v for k, v in sorted(self.level_histogram.items())},
        }


def _is_isotropic_witness(w, x, p: int) -> bool:
    if all(v % p == 0 for v in x):
        return False
    n = len(x)
    return (sum(v * v for v in x) % p == 0
            and all(sum(w[i][k] * x[i] for i in range(n)) % p == 0 for k in range(n)))


def _has_isotropic_solution(g: Graph, prof, p: int) -> bool:
    return exclude_by_isotropy(g, prof, p).status is not Status.EXCLUDED


def cross_validate(n: int, certifier: Callable[[Graph], CertificationReport] = certify,
                   index: GcsIndex | None = None) -> ValidationReport:
    """Run the certifier on every controllable class and compare with brute force.

    Without ``index`` the exhaustive sweep is used (n <= 7); larger n needs an
    index built from a stream that covers every isomorphism class.
    """
    if index is None:
        _check_exhaustive(n)
    elif index.n != n:
        raise ValueError(f"index is for n = {index.n}, not {n}")
    t0 = time.perf_counter()
    index = index or gcs_index(n)
    report = ValidationReport(n, index.labeled_count, len(index.classes()),
                              len(index.non_dgs_classes()), 0, Counter())
    for key, members in index.buckets.items():
        for canon in members:
            g = Graph.from_edge_mask(n, canon)
            res = certifier(g)
            report.verdicts[res.verdict.value] += 1
            mates = [Graph.from_edge_mask(n, m) for m in members if m != canon]
            name = emit_graph6(g).decode()
            if res.verdict is Verdict.CERTIFIED_DGS and mates:
                report.soundness_violations.append(
                    f"{name} certified but has mates {[emit_graph6(h).decode() for h in mates]}")
            # controllability is a property of the generalized spectrum, so mates share it
            if not res.profile.controllable:
                continue
            report.controllable_classes += 1
            if res.verdict is Verdict.UNDECIDED:
                if mates:
                    report.undecided_with_mate += 1
                else:
                    report.undecided_without_mate += 1
            for h in mates:
                report.pair_checks.append(_check_pair(g, h, res, report))
    report.verdicts = dict(report.verdicts)
    report.seconds = time.perf_counter() - t0
    return report


def _check_pair(g: Graph, h: Graph, res: CertificationReport, report: ValidationReport) -> PairCheck:
    prof = res.profile
    q = recover_q(g, h)
    ell = q.level
    report.level_histogram[ell] = report.level_histogram.get(ell, 0) + 1
    name = f"{emit_graph6(g).decode()}->{emit_graph6(h).decode()}"
    divides = prof.dn % ell == 0
    if not divides:
        report.level_violations.append(f"{name}: level {ell} does not divide d_n = {prof.dn}")
    odd = {}
    for p in factor(ell).primes():
        if p == 2:
            continue
        odd[p] = _has_isotropic_solution(g, prof, p)
        if not odd[p]:
            report.level_violations.append(f"{name}: p={p} divides the level but has no isotropic solution")
        if not any(_is_isotropic_witness(prof.walk_matrix, q.column(j), p) for j in range(q.n)):
            report.level_violations.append(f"{name}: no column of lQ is an isotropic solution mod {p}")
    passes = None
    if ell == 2:
        _, cands = exclude_level2(g, prof)
        passes = any(c.passes_mod4 for c in cands)
        if not passes:
            report.level_violations.append(f"{name}: level 2 but no weight-four candidate passes")
    return PairCheck(emit_graph6(g).decode(), emit_graph6(h).decode(), ell, prof.dn,
                     divides, odd, passes)


@dataclass
class Graph6Stream:
    """Lazily parsed graph6 lines.  Iterate once; ``count`` and ``skipped`` fill as it goes."""

    source: Iterable[str | bytes]
    strict: bool = False
    count: int = 0
    skipped: list[tuple[int, str]] = field(default_factory=list)

    def __iter__(self) -> Iterator[Graph]:
        for lineno, line in enumerate(self.source, 1):
            if isinstance(line, str):
                line = line.encode("ascii", errors="replace")
            line = line.strip()
            if line.startswith(b">>graph6<<"):
                line = line[len(b">>graph6<<"):]
            if not line:
                continue
            try:
                g = parse_graph6(line)
            except GraphFormatError as exc:
                if self.strict:
                    raise GraphFormatError(f"line {lineno}: {exc}") from exc
                log.warning("skipping line %d: %s", lineno, exc)
                self.skipped.append((lineno, str(exc)))
                continue
            self.count += 1
            yield g


def ingest_graph6_stream(source: Iterable[str | bytes] | TextIO, strict: bool = False) -> Graph6Stream:
    return Graph6Stream(source, strict)
