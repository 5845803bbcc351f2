"""Pure-Python/numpy implementations of the oracle kernels.

Reference semantics for ``_ckernels``; both must agree bit for bit.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"
MAX_N = 10


def _check(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"kernels support 1 <= n <= {MAX_N}, got {n}")


def _edge_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(1, n) for i in range(j)]


def _adjacency_batch(n: int, masks: np.ndarray) -> np.ndarray:
    masks = np.asarray(masks, dtype=np.uint64)
    a = np.zeros((len(masks), n, n), dtype=np.int64)
    for k, (i, j) in enumerate(_edge_pairs(n)):
        bit = ((masks >> np.uint64(k)) & np.uint64(1)).astype(np.int64)
        a[:, i, j] = bit
        a[:, j, i] = bit
    return a


def _charpoly_from_traces(n: int, traces: np.ndarray) -> np.ndarray:
    # Newton identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    b = traces.shape[0]
    e = np.zeros((b, n + 1), dtype=np.int64)
    e[:, 0] = 1
    for k in range(1, n + 1):
        s = np.zeros(b, dtype=np.int64)
        for i in range(1, k + 1):
            term = e[:, k - i] * traces[:, i]
            s += term if i % 2 else -term
        e[:, k] = s // k
    # coefficient of x^j is (-1)^(n-j) e_{n-j}
    out = np.empty((b, n), dtype=np.int64)
    for j in range(n):
        out[:, j] = e[:, n - j] if (n - j) % 2 == 0 else -e[:, n - j]
    return out


def _traces(a: np.ndarray) -> np.ndarray:
    b, n, _ = a.shape
    t = np.zeros((b, n + 1), dtype=np.int64)
    t[:, 0] = n
    p = a.copy()
    t[:, 1] = np.trace(p, axis1=1, axis2=2)
    for k in range(2, n + 1):
        p = np.matmul(p, a)
        t[:, k] = np.trace(p, axis1=1, axis2=2)
    return t


def charpoly_keys(n: int, masks) -> np.ndarray:
    """Rows ``[c_0..c_{n-1} of A, c_0..c_{n-1} of complement]`` (monic term dropped)."""
    _check(n)
    a = _adjacency_batch(n, masks)
    comp = 1 - np.eye(n, dtype=np.int64)[None, :, :] - a
    return np.concatenate(
        [_charpoly_from_traces(n, _traces(a)), _charpoly_from_traces(n, _traces(comp))],
        axis=1,
    )


def _refine(n: int, nbrs: list[list[int]], colors: list[int]) -> list[int]:
    k = max(colors) + 1
    while True:
        sigs = []
        for v in range(n):
            cnt = [0] * k
            for u in nbrs[v]:
                cnt[colors[u]] += 1
            sigs.append((colors[v], *cnt))
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == k:
            return new
        colors = new
        k = len(ranks)


def canonical_mask(n: int, mask: int) -> int:
    """Minimum relabelled edge mask over all leaves of the individualise-refine tree."""
    _check(n)
    pairs = _edge_pairs(n)
    edges = [pairs[k] for k in range(len(pairs)) if (mask >> k) & 1]
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    best = None

    def search(colors: list[int]) -> None:
        nonlocal best
        colors = _refine(n, nbrs, colors)
        k = max(colors) + 1
        if k == n:
            m = 0
            for i, j in edges:
                a, b = colors[i], colors[j]
                if a > b:
                    a, b = b, a
                m |= 1 << (b * (b - 1) // 2 + a)
            if best is None or m < best:
                best = m
            return
        sizes = [0] * k
        for c in colors:
            sizes[c] += 1
        target = next(c for c in range(k) if sizes[c] > 1)
        for v in range(n):
            if colors[v] == target:
                search([c + 1 if c > target or (c == target and u != v) else c
                        for u, c in enumerate(colors)])

    search([0] * n)
    return best


def canonical_masks(n: int, masks) -> np.ndarray:
    _check(n)
    return np.array([canonical_mask(n, int(m)) for m in np.asarray(masks, dtype=np.uint64)],
                    dtype=np.uint64)
