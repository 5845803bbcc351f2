"""Command-line entry point: ``dgscert {analyze,batch,verify-q,oracle,density}``."""

from __future__ import annotations

import argparse
import logging
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import __version__
from .density import density_experiment
from .exclusion import Verdict, certify
from .graph import Graph, GraphFormatError, emit_graph6, parse_adjacency_text, parse_graph6
from .ntheory import DEFAULT_EFFORT
from .kernels import load_backend
from .oracle import EXHAUSTIVE_MAX_N, build_gcs_index, cross_validate, ingest_graph6_stream
from .qmatrix import RationalOrthogonal, check_membership, parse_q_text, q_problems
from .report import ReportDocument, build_document, dumps, render_text

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_INPUT = 2
EXIT_UNDECIDED = 10
EXIT_NOT_CONTROLLABLE = 11

VERDICT_EXIT = {
    Verdict.CERTIFIED_DGS.value: EXIT_OK,
    Verdict.UNDECIDED.value: EXIT_UNDECIDED,
    Verdict.NOT_CONTROLLABLE.value: EXIT_NOT_CONTROLLABLE,
}


class InputError(Exception):
    pass


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="ascii", errors="replace") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _sniff_format(text: str) -> str:
    # graph6 never uses '0' or '1' as data bytes, so a 0/1 body means a matrix
    body = "".join(text.split())
    return "adjacency" if body and set(body) <= {"0", "1"} else "graph6"


def load_graph(text: str, fmt: str) -> tuple[Graph, str]:
    if fmt == "auto":
        fmt = _sniff_format(text)
    try:
        if fmt == "adjacency":
            return parse_adjacency_text(text), fmt
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise InputError(f"expected exactly one graph6 line, got {len(lines)}")
        return parse_graph6(lines[0].strip()), fmt
    except GraphFormatError as exc:
        raise InputError(f"{fmt} parse error: {exc}") from None


def _graph6_or_none(g: Graph) -> str | None:
    try:
        return emit_graph6(g).decode()
    except ValueError:
        return None


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


# --------------------------------------------------------------------- analyze

def cmd_analyze(args: argparse.Namespace) -> int:
    g, fmt = load_graph(_read_source(args.input), args.format)
    rep = certify(g, args.effort, seed=args.seed)
    doc = build_document(rep, fmt=fmt, source=args.input, graph6=_graph6_or_none(g),
                         include_timings=args.timings)
    _emit(doc.to_json() if args.json else render_text(doc))
    return VERDICT_EXIT[doc.verdict]


# ----------------------------------------------------------------------- batch

def _certify_line(job: tuple[int, bytes, int, int, bool, str]) -> tuple[str, str, bool | None]:
    lineno, g6, effort, seed, timings, source = job
    g = parse_graph6(g6)
    rep = certify(g, effort, seed=seed)
    doc = build_document(rep, fmt="graph6", source=source, graph6=g6.decode(),
                         include_timings=timings, extra_input={"line": lineno})
    return doc.to_json(), doc.verdict, rep.profile.in_fn


def _batch_jobs(text: str, args: argparse.Namespace, skipped: list[tuple[int, str]]):
    current = 0

    def lines():
        nonlocal current
        for current, ln in enumerate(text.splitlines(), 1):
            yield ln

    # the stream is lazy, so ``current`` is the line of the graph just yielded
    stream = ingest_graph6_stream(lines(), strict=args.strict)
    jobs = []
    try:
        for g in stream:
            jobs.append((current, emit_graph6(g), args.effort, args.seed, args.timings, args.input))
    except GraphFormatError as exc:
        raise InputError(str(exc)) from None
    skipped.extend(stream.skipped)
    return jobs


def cmd_batch(args: argparse.Namespace) -> int:
    skipped: list[tuple[int, str]] = []
    jobs = _batch_jobs(_read_source(args.input), args, skipped)
    if args.parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.parallel) as pool:
            results = list(pool.map(_certify_line, jobs, chunksize=max(1, len(jobs) // (8 * args.parallel))))
    else:
        results = [_certify_line(j) for j in jobs]

    verdicts: Counter[str] = Counter({v.value: 0 for v in Verdict})
    fn = Counter({"member": 0, "non_member": 0, "indeterminate": 0})
    for line, verdict, in_fn in results:
        verdicts[verdict] += 1
        fn["member" if in_fn else "indeterminate" if in_fn is None else "non_member"] += 1
        if args.json:
            _emit(line)
        else:
            doc = ReportDocument.from_json(line)
            _emit(f"{doc.input['line']}\t{doc.input['graph6']}\t{doc.verdict}")
    summary = {
        "kind": "summary",
        "graphs": len(results),
        "skipped": len(skipped),
        "skipped_lines": [{"line": ln, "error": msg} for ln, msg in skipped],
        "verdicts": dict(sorted(verdicts.items())),
        "fn_membership": dict(sorted(fn.items())),
    }
    if args.json:
        _emit(dumps(summary))
    else:
        _emit(f"graphs: {summary['graphs']}  skipped: {summary['skipped']}")
        for k, v in summary["verdicts"].items():
            _emit(f"  {k}: {v}")
        _emit("  F_n " + ", ".join(f"{k}: {v}" for k, v in summary["fn_membership"].items()))
    return EXIT_OK


# -------------------------------------------------------------------- verify-q

def verify_q_document(g: Graph, rows: list[list[int]], ell: int) -> dict:
    checks = []
    problems = q_problems(rows, ell)
    for name in ("shape", "row sum", "column sum", "orthogonality", "level"):
        hits = [p for p in problems if p.startswith(name + ":")]
        checks.append({"check": name, "ok": not hits, "problems": hits})
    doc = {"n": g.n, "level": ell, "checks": checks, "valid": not problems,
           "member": None, "image_graph6": None}
    if not problems:
        if len(rows) != g.n:
            doc["checks"].append({"check": "dimension", "ok": False,
                                  "problems": [f"dimension: Q is {len(rows)}x{len(rows)} "
                                               f"but the graph has {g.n} vertices"]})
            doc["valid"] = False
        else:
            h = check_membership(RationalOrthogonal.from_scaled(rows, ell), g)
            doc["member"] = h is not None
            if h is not None:
                doc["image_graph6"] = _graph6_or_none(h)
    return doc


def cmd_verify_q(args: argparse.Namespace) -> int:
    g, _ = load_graph(_read_source(args.graph), args.format)
    try:
        rows, ell = parse_q_text(_read_source(args.q))
    except ValueError as exc:
        raise InputError(f"Q file: {exc}") from None
    doc = verify_q_document(g, rows, ell)
    if args.json:
        _emit(dumps(doc))
    else:
        for c in doc["checks"]:
            _emit(f"{c['check']:<14} {'ok' if c['ok'] else 'FAILED'}")
            for p in c["problems"]:
                _emit(f"    {p}")
        _emit(f"level: {doc['level']}")
        _emit(f"member: {doc['member']}")
        if doc["image_graph6"]:
            _emit(f"H: {doc['image_graph6']}")
    return EXIT_OK if doc["valid"] and doc["member"] else EXIT_FAILED_CHECK


# ---------------------------------------------------------------------- oracle

def cmd_oracle(args: argparse.Namespace) -> int:
    index = build_gcs_index(args.n, backend=load_backend(args.backend)) if args.backend else None
    rep = cross_validate(args.n, lambda g: certify(g, args.effort, seed=args.seed), index=index)
    out = rep.summary()
    out["seconds"] = round(rep.seconds, 3)
    if args.json:
        _emit(dumps(out))
    else:
        for k, v in out.items():
            _emit(f"{k}: {v}")
        for msg in rep.soundness_violations + rep.level_violations:
            _emit(f"VIOLATION {msg}")
    return EXIT_OK if rep.ok else EXIT_FAILED_CHECK


# --------------------------------------------------------------------- density

def cmd_density(args: argparse.Namespace) -> int:
    rep = density_experiment(args.n, args.samples, edge_probability=args.edge_probability,
                             seed=args.seed, effort_bound=args.effort, parallel=args.parallel)
    out = rep.summary()
    if args.json:
        _emit(dumps(out))
    else:
        for k, v in out.items():
            _emit(f"{k}: {v}")
        for msg in rep.consistency_problems:
            _emit(f"INCONSISTENT {msg}")
    return EXIT_OK if not rep.consistency_problems else EXIT_FAILED_CHECK


# ---------------------------------------------------------------------- parser

def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _oracle_n(text: str) -> int:
    v = int(text)
    if not 1 <= v <= EXHAUSTIVE_MAX_N:
        raise argparse.ArgumentTypeError(f"n must be between 1 and {EXHAUSTIVE_MAX_N}")
    return v


def _probability(text: str) -> float:
    v = float(text)
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError("edge probability must lie in [0, 1]")
    return v


def _common(json_default: bool) -> argparse.ArgumentParser:
    # built per subcommand: argparse shares parent actions, so defaults would leak
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--effort", type=_positive, default=DEFAULT_EFFORT,
                        help="factorization effort bound (rho iterations)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized primality and rho")
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="json", action="store_true", default=json_default,
                     help="machine-readable output")
    out.add_argument("--text", dest="json", action="store_false", help="human-readable output")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dgscert",
                                     description="Certify graphs determined by their generalized spectrum.")
    parser.add_argument("--version", action="version", version=f"dgscert {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings and progress")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[_common(False)], help="certify one graph")
    p.add_argument("input", nargs="?", default="-", help="graph file, or - for stdin")
    p.add_argument("--format", choices=("auto", "graph6", "adjacency"), default="auto")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("batch", parents=[_common(True)], help="certify a graph6 stream")
    p.add_argument("input", nargs="?", default="-", help="graph6 file, or - for stdin")
    p.add_argument("--parallel", type=_positive, default=1, help="worker processes")
    p.add_argument("--strict", action="store_true", help="abort on the first malformed line")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in reports")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("verify-q", parents=[_common(False)], help="check a rational orthogonal Q against a graph")
    p.add_argument("graph", help="graph file")
    p.add_argument("q", help="Q file: 'n level' then n rows of level*Q")
    p.add_argument("--format", choices=("auto", "graph6", "adjacency"), default="auto")
    p.set_defaults(func=cmd_verify_q)

    p = sub.add_parser("oracle", parents=[_common(False)], help="exhaustive brute-force cross-validation")
    p.add_argument("--n", type=_oracle_n, required=True, help=f"vertex count, at most {EXHAUSTIVE_MAX_N}")
    p.add_argument("--backend", choices=("cython", "python"), help="kernel backend override")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("density", parents=[_common(False)], help="estimate the F_n fraction of G(n, p)")
    p.add_argument("--n", type=_positive, default=12)
    p.add_argument("--samples", type=_positive, default=10_000)
    p.add_argument("--edge-probability", type=_probability, default=0.5)
    p.add_argument("--parallel", type=_positive, default=1, help="worker processes")
    p.set_defaults(func=cmd_density)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="dgscert: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"dgscert: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
