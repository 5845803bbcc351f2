# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled oracle kernels; semantics mirror ``_pykernels`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()

cdef enum:
    MAXN = 10

BACKEND = "cython"
MAX_N = MAXN


cdef void _unpack(int n, uint64_t mask, int64_t[MAXN][MAXN] a) noexcept nogil:
    cdef int i, j, k = 0
    for i in range(n):
        for j in range(n):
            a[i][j] = 0
    for j in range(1, n):
        for i in range(j):
            if (mask >> k) & 1:
                a[i][j] = 1
                a[j][i] = 1
            k += 1


cdef void _charpoly(int n, int64_t[MAXN][MAXN] a, int64_t* out) noexcept nogil:
    cdef int64_t p[MAXN][MAXN]
    cdef int64_t q[MAXN][MAXN]
    cdef int64_t tr[MAXN + 1]
    cdef int64_t e[MAXN + 1]
    cdef int64_t s, term
    cdef int i, j, l, k
    for i in range(n):
        for j in range(n):
            p[i][j] = a[i][j]
    tr[0] = n
    tr[1] = 0
    for i in range(n):
        tr[1] += p[i][i]
    for k in range(2, n + 1):
        for i in range(n):
            for j in range(n):
                s = 0
                for l in range(n):
                    s += p[i][l] * a[l][j]
                q[i][j] = s
        tr[k] = 0
        for i in range(n):
            for j in range(n):
                p[i][j] = q[i][j]
            tr[k] += p[i][i]
    e[0] = 1
    for k in range(1, n + 1):
        s = 0
        for i in range(1, k + 1):
            term = e[k - i] * tr[i]
            if i % 2:
                s += term
            else:
                s -= term
        e[k] = s // k
    for j in range(n):
        if (n - j) % 2 == 0:
            out[j] = e[n - j]
        else:
            out[j] = -e[n - j]


def charpoly_keys(int n, masks):
    if not 1 <= n <= MAXN:
        raise ValueError(f"kernels support 1 <= n <= {MAXN}, got {n}")
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] m = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef Py_ssize_t b = m.shape[0], r
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.empty((b, 2 * n), dtype=np.int64)
    cdef int64_t a[MAXN][MAXN]
    cdef int64_t c[MAXN][MAXN]
    cdef int64_t buf[2 * MAXN]
    cdef int i, j
    with nogil:
        for r in range(b):
            _unpack(n, m[r], a)
            for i in range(n):
                for j in range(n):
                    c[i][j] = 0 if i == j else 1 - a[i][j]
            _charpoly(n, a, buf)
            _charpoly(n, c, buf + n)
            for i in range(2 * n):
                out[r, i] = buf[i]
    return out


cdef inline int _sigcmp(int* a, int* b, int length) noexcept nogil:
    cdef int i
    for i in range(length):
        if a[i] != b[i]:
            return -1 if a[i] < b[i] else 1
    return 0


cdef int _refine(int n, int[MAXN][MAXN] nb, int* deg, int* colors) noexcept nogil:
    """Stable colour refinement in place; returns the number of colours."""
    cdef int sig[MAXN][MAXN + 1]
    cdef int order[MAXN]
    cdef int newc[MAXN]
    cdef int k = 0, knew, v, u, t, i, cmp, x
    for v in range(n):
        if colors[v] + 1 > k:
            k = colors[v] + 1
    while True:
        for v in range(n):
            sig[v][0] = colors[v]
            for i in range(1, k + 1):
                sig[v][i] = 0
            for t in range(deg[v]):
                u = nb[v][t]
                sig[v][colors[u] + 1] += 1
            order[v] = v
        # insertion sort of vertices by signature
        for i in range(1, n):
            x = order[i]
            t = i - 1
            while t >= 0 and _sigcmp(sig[order[t]], sig[x], k + 1) > 0:
                order[t + 1] = order[t]
                t -= 1
            order[t + 1] = x
        knew = 0
        newc[order[0]] = 0
        for i in range(1, n):
            if _sigcmp(sig[order[i - 1]], sig[order[i]], k + 1) != 0:
                knew += 1
            newc[order[i]] = knew
        knew += 1
        for v in range(n):
            colors[v] = newc[v]
        if knew == k:
            return k
        k = knew


cdef void _search(int n, int[MAXN][MAXN] nb, int* deg, int* colors_in,
                  int nedges, int* ei, int* ej, uint64_t* best, int* have) noexcept nogil:
    cdef int colors[MAXN]
    cdef int child[MAXN]
    cdef int sizes[MAXN]
    cdef int v, u, k, target, t, x, y
    cdef uint64_t m
    for v in range(n):
        colors[v] = colors_in[v]
    k = _refine(n, nb, deg, colors)
    if k == n:
        m = 0
        for t in range(nedges):
            x = colors[ei[t]]
            y = colors[ej[t]]
            if x > y:
                x, y = y, x
            m |= (<uint64_t>1) << (y * (y - 1) // 2 + x)
        if not have[0] or m < best[0]:
            best[0] = m
            have[0] = 1
        return
    for t in range(k):
        sizes[t] = 0
    for v in range(n):
        sizes[colors[v]] += 1
    target = 0
    while sizes[target] < 2:
        target += 1
    for v in range(n):
        if colors[v] != target:
            continue
        for u in range(n):
            if colors[u] > target or (colors[u] == target and u != v):
                child[u] = colors[u] + 1
            else:
                child[u] = colors[u]
        _search(n, nb, deg, child, nedges, ei, ej, best, have)


def canonical_masks(int n, masks):
    if not 1 <= n <= MAXN:
        raise ValueError(f"kernels support 1 <= n <= {MAXN}, got {n}")
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] m = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef Py_ssize_t b = m.shape[0], r
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] out = np.empty(b, dtype=np.uint64)
    cdef int nb[MAXN][MAXN]
    cdef int deg[MAXN]
    cdef int colors[MAXN]
    cdef int ei[MAXN * MAXN]
    cdef int ej[MAXN * MAXN]
    cdef int i, j, k, nedges, have
    cdef uint64_t best, mask
    with nogil:
        for r in range(b):
            mask = m[r]
            for i in range(n):
                deg[i] = 0
                colors[i] = 0
            nedges = 0
            k = 0
            for j in range(1, n):
                for i in range(j):
                    if (mask >> k) & 1:
                        nb[i][deg[i]] = j
                        deg[i] += 1
                        nb[j][deg[j]] = i
                        deg[j] += 1
                        ei[nedges] = i
                        ej[nedges] = j
                        nedges += 1
                    k += 1
            have = 0
            best = 0
            _search(n, nb, deg, colors, nedges, ei, ej, &best, &have)
            out[r] = best
    return out


def canonical_mask(int n, mask):
    return int(canonical_masks(n, np.array([mask], dtype=np.uint64))[0])
