"""Compare the compiled and pure-Python oracle kernels.

    python benchmarks/bench_kernels.py [--n 6] [--repeat 3]

Reports the best wall time per kernel and backend, checks that both
backends return identical arrays, then times a full index build.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from dgscert import kernels
from dgscert.oracle import build_gcs_index


def best_of(repeat, fn, *args):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=6, help="vertex count (all labelled graphs are used)")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = kernels.available_backends()
    masks = np.arange(1 << (args.n * (args.n - 1) // 2), dtype=np.uint64)
    print(f"n = {args.n}, {len(masks)} labelled graphs, backends: {', '.join(backends)}")
    results = {}
    for name in backends:
        impl = kernels.load_backend(name)
        t_keys, keys = best_of(args.repeat, impl.charpoly_keys, args.n, masks)
        t_canon, canon = best_of(args.repeat, impl.canonical_masks, args.n, masks)
        t_index, index = best_of(1, build_gcs_index, args.n, None, impl)
        results[name] = (keys, canon, index.buckets)
        print(f"{name:>7}: charpoly_keys {t_keys:8.3f}s  canonical_masks {t_canon:8.3f}s  "
              f"index build {t_index:8.3f}s  ({len(index.classes())} classes)")
    if len(results) == 2:
        (k1, c1, b1), (k2, c2, b2) = results.values()
        same = np.array_equal(k1, k2) and np.array_equal(c1, c2) and b1 == b2
        print("backends agree" if same else "BACKENDS DISAGREE")


if __name__ == "__main__":
    main()
