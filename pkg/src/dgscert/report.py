"""JSON report documents.

Integers that can outgrow 53 bits (determinants, invariant factors, primes,
isotropy witnesses) are written as decimal strings.  Serialization uses
sorted keys and compact separators so identical inputs give identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Any

from . import __version__
from .exclusion import CertificationReport, PrimeStatus
from .ntheory import Factorization

SCHEMA_VERSION = 1


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def factorization_dict(f: Factorization | None) -> dict | None:
    if f is None:
        return None
    return {
        "sign": f.sign,
        "factors": [[str(p), e] for p, e in f.factors],
        "residual": str(f.residual),
        "complete": f.complete,
        "probabilistic": f.probabilistic,
    }


def prime_status_dict(s: PrimeStatus) -> dict:
    witness: Any = None
    if s.witness is not None:
        if s.prime == 2:
            witness = [list(sup) for sup in s.witness]
        else:
            witness = [str(x) for x in s.witness]
    return {
        "prime": str(s.prime),
        "status": s.status.value,
        "rule": s.rule.value,
        "witness": witness,
        "detail": s.detail,
        "nullity": s.nullity,
        "xi_norm": None if s.xi_norm is None else str(s.xi_norm),
        "xi_class": None if s.xi_class is None else s.xi_class.value,
    }


@dataclass
class ReportDocument:
    schema_version: int
    tool: dict
    input: dict
    profile: dict
    primes: list
    level2: dict | None
    verdict: str
    timings: dict | None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> ReportDocument:
        missing = {f for f in cls.__dataclass_fields__} - set(d)
        if missing:
            raise ValueError(f"report is missing fields {sorted(missing)}")
        if d["schema_version"] != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema version {d['schema_version']}")
        return cls(**{k: d[k] for k in cls.__dataclass_fields__})

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        return cls.from_dict(json.loads(text))


def build_document(report: CertificationReport, *, fmt: str, source: str,
                   graph6: str | None, include_timings: bool = False,
                   extra_input: dict | None = None) -> ReportDocument:
    prof = report.profile
    level2 = None
    if report.level2 is not None:
        level2 = {
            "status": report.level2.status.value,
            "candidates": [
                {"support": list(c.support), "passes_mod4": c.passes_mod4,
                 "failing_power": c.failing_power}
                for c in report.level2_candidates
            ],
        }
    inp = {"format": fmt, "source": source, "graph6": graph6}
    if extra_input:
        inp.update(extra_input)
    return ReportDocument(
        schema_version=SCHEMA_VERSION,
        tool={"name": "dgscert", "version": __version__},
        input=inp,
        profile={
            "n": prof.n,
            "det": str(prof.det),
            "snf_diagonal": [str(d) for d in prof.snf_diagonal],
            "dn": str(prof.dn),
            "det_factorization": factorization_dict(prof.det_factorization),
            "dn_factorization": factorization_dict(prof.dn_factorization),
            "controllable": prof.controllable,
            "in_fn": prof.in_fn,
        },
        primes=[prime_status_dict(s) for s in report.primes],
        level2=level2,
        verdict=report.verdict.value,
        timings={k: round(v, 6) for k, v in sorted(report.timings.items())} if include_timings else None,
    )


def render_text(doc: ReportDocument) -> str:
    p = doc.profile
    lines = [
        f"verdict: {doc.verdict}",
        f"n = {p['n']}   controllable = {p['controllable']}   in F_n = {p['in_fn']}",
        f"det(W) = {p['det']}",
    ]
    if p["det_factorization"]:
        lines.append(f"         = {_fact_text(p['det_factorization'])}")
    lines.append(f"d_n = {p['dn']}")
    if p["dn_factorization"]:
        lines.append(f"    = {_fact_text(p['dn_factorization'])}")
    if doc.primes:
        lines.append("primes of d_n:")
        for s in doc.primes:
            lines.append(f"  p = {s['prime']:>10}  {s['status']:<8} {s['rule']:<10} {s['detail']}")
    if doc.level2 is not None:
        n_pass = sum(c["passes_mod4"] for c in doc.level2["candidates"])
        lines.append(f"level-2 scan: {len(doc.level2['candidates'])} candidates, {n_pass} passing")
    if doc.timings:
        lines.append("timings: " + ", ".join(f"{k}={v:.4f}s" for k, v in doc.timings.items()))
    return "\n".join(lines) + "\n"


def _fact_text(f: dict) -> str:
    parts = [f"{p}^{e}" if e > 1 else p for p, e in f["factors"]]
    if f["residual"] != "1":
        parts.append(f"[unfactored {f['residual']}]")
    body = " * ".join(parts) or "1"
    return ("-" if f["sign"] < 0 else "") + body
