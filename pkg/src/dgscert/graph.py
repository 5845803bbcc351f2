"""Simple undirected graphs, graph6/adjacency-text I/O and exact spectra."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .linalg import IntMatrix, IntPolynomial, char_poly

GRAPH6_MAX_N = 62


class GraphFormatError(ValueError):
    """Raised for malformed graph6 records or adjacency text."""

    def __init__(self, message: str, *, offset: int | None = None,
                 row: int | None = None, col: int | None = None):
        where = []
        if offset is not None:
            where.append(f"byte {offset}")
        if row is not None:
            where.append(f"row {row}")
        if col is not None:
            where.append(f"column {col}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.offset = offset
        self.row = row
        self.col = col


@dataclass(frozen=True)
class Graph:
    """Labeled simple graph on vertices ``0..n-1``.

    ``rows[v]`` is the neighbourhood of ``v`` as a bitmask.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph must have at least one vertex")
        if len(self.rows) != self.n:
            raise ValueError("need one adjacency row per vertex")
        full = (1 << self.n) - 1
        for v, r in enumerate(self.rows):
            if r & ~full or (r >> v) & 1:
                raise ValueError(f"bad adjacency row for vertex {v}")
            for u in _bits(r):
                if not (self.rows[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence[int]]) -> Graph:
        n = len(m)
        rows = []
        for i, r in enumerate(m):
            if len(r) != n:
                raise ValueError(f"row {i} has length {len(r)}, expected {n}")
            rows.append(sum(1 << j for j, x in enumerate(r) if x))
        return cls(n, tuple(rows))

    @classmethod
    def from_edge_mask(cls, n: int, mask: int) -> Graph:
        """Inverse of :meth:`edge_mask`."""
        rows = [0] * n
        k = 0
        for j in range(1, n):
            for i in range(j):
                if (mask >> k) & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                k += 1
        return cls(n, tuple(rows))

    def edge_mask(self) -> int:
        """Upper-triangle bits in graph6 order: bit ``j(j-1)/2 + i`` is x(i, j)."""
        mask = 0
        k = 0
        for j in range(1, self.n):
            rj = self.rows[j]
            for i in range(j):
                if (rj >> i) & 1:
                    mask |= 1 << k
                k += 1
        return mask

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.rows[i] >> (i + 1) << (i + 1))]

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        rows = [0] * self.n
        for v, r in enumerate(self.rows):
            rows[perm[v]] = sum(1 << perm[u] for u in _bits(r))
        return Graph(self.n, tuple(rows))

    def __repr__(self) -> str:
        if self.n <= GRAPH6_MAX_N:
            return f"Graph({emit_graph6(self).decode()!r})"
        return f"Graph(n={self.n}, m={self.num_edges})"


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def parse_graph6(text: bytes | str) -> Graph:
    if isinstance(text, str):
        text = text.encode("ascii", errors="replace")
    data = text.rstrip(b"\r\n")
    if data.startswith(b">>graph6<<"):
        raise GraphFormatError("graph6 header line is not supported", offset=0)
    if not data:
        raise GraphFormatError("empty graph6 record", offset=0)
    head = data[0]
    if head == 126:
        raise GraphFormatError("long-form graph6 (n > 62) is not supported", offset=0)
    if not 64 <= head <= 125:
        raise GraphFormatError(f"bad header byte {head!r}", offset=0)
    n = head - 63
    nbits = n * (n - 1) // 2
    ngroups = (nbits + 5) // 6
    body = data[1:]
    for k, c in enumerate(body):
        if not 63 <= c <= 126:
            raise GraphFormatError(f"character {c!r} out of range", offset=k + 1)
    if len(body) < ngroups:
        raise GraphFormatError(
            f"truncated bit section: expected {ngroups} bytes, got {len(body)}",
            offset=len(data))
    if len(body) > ngroups:
        raise GraphFormatError("trailing bytes after bit section", offset=1 + ngroups)
    value = 0
    for c in body:
        value = (value << 6) | (c - 63)
    pad = 6 * ngroups - nbits
    if value & ((1 << pad) - 1):
        raise GraphFormatError("nonzero padding bits", offset=len(data) - 1)
    value >>= pad
    # value holds x(0,1) as its most significant bit
    mask = 0
    for k in range(nbits):
        if (value >> (nbits - 1 - k)) & 1:
            mask |= 1 << k
    return Graph.from_edge_mask(n, mask)


def emit_graph6(g: Graph) -> bytes:
    if g.n > GRAPH6_MAX_N:
        raise ValueError(f"graph6 short form supports n <= {GRAPH6_MAX_N}, got {g.n}")
    nbits = g.n * (g.n - 1) // 2
    mask = g.edge_mask()
    out = bytearray([63 + g.n])
    group = 0
    for k in range(nbits):
        group = (group << 1) | ((mask >> k) & 1)
        if k % 6 == 5:
            out.append(63 + group)
            group = 0
    rem = nbits % 6
    if rem:
        out.append(63 + (group << (6 - rem)))
    return bytes(out)


def parse_adjacency_text(text: str) -> Graph:
    """Parse rows of 0/1 symbols, one row per non-blank line.

    Whitespace between symbols is optional.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("no adjacency rows")
    n = len(lines)
    m = []
    for i, ln in enumerate(lines):
        row = "".join(ln.split())
        if len(row) != n:
            raise GraphFormatError(f"ragged row: {len(row)} symbols, expected {n}", row=i)
        for j, ch in enumerate(row):
            if ch not in "01":
                raise GraphFormatError(f"non-binary symbol {ch!r}", row=i, col=j)
        m.append([int(ch) for ch in row])
    for i in range(n):
        if m[i][i]:
            raise GraphFormatError("nonzero diagonal entry", row=i, col=i)
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise GraphFormatError("asymmetric entry", row=i, col=j)
    return Graph.from_matrix(m)


def emit_adjacency_text(g: Graph) -> str:
    return "\n".join(" ".join(str(x) for x in r) for r in adjacency_matrix(g)) + "\n"


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~r & ~(1 << v) for v, r in enumerate(g.rows)))


def adjacency_matrix(g: Graph) -> IntMatrix:
    return [[(r >> j) & 1 for j in range(g.n)] for r in g.rows]


def generalized_charpoly(g: Graph) -> tuple[IntPolynomial, IntPolynomial]:
    """Characteristic polynomials of A(G) and of A(complement of G)."""
    return char_poly(adjacency_matrix(g)), char_poly(adjacency_matrix(complement(g)))


def complete_graph(n: int) -> Graph:
    return complement(empty_graph(n))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
