"""Sampling estimate of how often a random graph lands in F_n."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .exclusion import Rule, Status, Verdict, certify
from .graph import Graph, emit_graph6
from .linalg import det
from .ntheory import DEFAULT_EFFORT, factor, p_adic_valuation
from .walk import IndeterminateError, build_walk_matrix, fn_membership


def sample_gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(i, j) for j in range(1, n) for i in range(j) if rng.random() < p])


@dataclass
class SampleOutcome:
    controllable: bool
    in_fn: bool | None
    verdict: str | None = None
    problems: list[str] = field(default_factory=list)


def fn_consistency_problems(g: Graph, report) -> list[str]:
    """Structural facts every F_n member's certification must show."""
    prof = report.profile
    half = g.n // 2
    out = []
    evens = [d for d in prof.snf_diagonal if d % 2 == 0]
    if len(evens) != half or any(p_adic_valuation(d, 2) != 1 for d in evens):
        out.append(f"SNF 2-part is not {half} factors of exactly 2")
    for s in report.primes:
        if s.prime == 2:
            if s.status is Status.UNKNOWN:
                out.append("prime 2 left UNKNOWN although v_2(d_n) = 1")
            elif s.status is Status.EXCLUDED and s.rule is not Rule.LEVEL2:
                out.append("prime 2 excluded by a rule other than the level-2 scan")
        elif not (s.status is Status.EXCLUDED and s.rule is Rule.SQUAREFREE):
            out.append(f"odd prime {s.prime} not excluded by square-freeness")
    certified = report.verdict is Verdict.CERTIFIED_DGS
    if report.level2 is None or certified != (report.level2.status is Status.EXCLUDED):
        out.append("verdict does not follow the level-2 scan")
    return out


def _one(args) -> SampleOutcome:
    g6, effort = args
    from .graph import parse_graph6

    g = parse_graph6(g6)
    d = det(build_walk_matrix(g))
    if d == 0:
        return SampleOutcome(False, False)
    try:
        member = fn_membership(g.n, d, factor(d, effort))
    except IndeterminateError:
        return SampleOutcome(True, None)
    if not member:
        return SampleOutcome(True, False)
    rep = certify(g, effort)
    return SampleOutcome(True, True, rep.verdict.value, fn_consistency_problems(g, rep))


@dataclass
class DensityReport:
    n: int
    samples: int
    edge_probability: float
    seed: int
    controllable: int = 0
    fn_members: int = 0
    fn_indeterminate: int = 0
    fn_certified: int = 0
    fn_undecided: int = 0
    consistency_problems: list[str] = field(default_factory=list)

    @property
    def fn_fraction(self) -> float:
        return self.fn_members / self.samples if self.samples else 0.0

    def summary(self) -> dict:
        return {
            "n": self.n,
            "samples": self.samples,
            "edge_probability": self.edge_probability,
            "seed": self.seed,
            "controllable": self.controllable,
            "fn_members": self.fn_members,
            "fn_indeterminate": self.fn_indeterminate,
            "fn_fraction": round(self.fn_fraction, 6),
            "fn_certified_dgs": self.fn_certified,
            "fn_undecided": self.fn_undecided,
            "consistency_problems": len(self.consistency_problems),
        }


def density_experiment(n: int = 12, samples: int = 10_000, *, edge_probability: float = 0.5,
                       seed: int = 0, effort_bound: int = DEFAULT_EFFORT,
                       parallel: int = 1) -> DensityReport:
    rng = random.Random(seed)
    jobs = [(emit_graph6(sample_gnp(n, edge_probability, rng)), effort_bound) for _ in range(samples)]
    if parallel > 1:
        with ProcessPoolExecutor(parallel) as pool:
            outcomes = list(pool.map(_one, jobs, chunksize=64))
    else:
        outcomes = [_one(j) for j in jobs]
    rep = DensityReport(n, samples, edge_probability, seed)
    for (g6, _), o in zip(jobs, outcomes):
        rep.controllable += o.controllable
        if o.in_fn is None:
            rep.fn_indeterminate += 1
        elif o.in_fn:
            rep.fn_members += 1
            if o.verdict == Verdict.CERTIFIED_DGS.value:
                rep.fn_certified += 1
            else:
                rep.fn_undecided += 1
            rep.consistency_problems += [f"{g6.decode()}: {msg}" for msg in o.problems]
    return rep
