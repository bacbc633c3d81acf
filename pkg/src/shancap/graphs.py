"""Immutable bit-vector graphs, standard generators, and graph products.

Adjacency is kept as one Python int per vertex (bit u of ``adj[v]`` set iff
u~v), which makes neighborhood intersections in the solvers single bitwise
operations.  Product graphs carry per-vertex coordinate labels so that a
vertex of ``strong_power(G, k)`` can be read back as a k-tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

DEFAULT_VERTEX_LIMIT = 100_000


class GraphError(ValueError):
    pass


class VertexLimitError(GraphError):
    """A construction would materialize more vertices than allowed."""


@dataclass(frozen=True)
class Graph:
    """Finite simple graph: symmetric loop-free adjacency, optional labels.

    labels, when present, is one distinct hashable tuple per vertex
    (products store mixed-radix coordinates there).
    """

    n: int
    adj: tuple
    labels: tuple | None = None

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise GraphError("adjacency row count != n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            if row & ~full:
                raise GraphError(f"adjacency row {v} has out-of-range bits")
            m = row
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at ({v},{u})")
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise GraphError("label count != n")
            if len(set(self.labels)) != self.n:
                raise GraphError("labels not distinct")

    # -- basic accessors -------------------------------------------------

    def degree(self, v):
        return self.adj[v].bit_count()

    def has_edge(self, u, v):
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v):
        out, m = [], self.adj[v]
        while m:
            out.append((m & -m).bit_length() - 1)
            m &= m - 1
        return out

    def edges(self):
        out = []
        for v in range(self.n):
            m = self.adj[v] >> (v + 1)
            while m:
                u = (m & -m).bit_length() - 1
                out.append((v, v + 1 + u))
                m &= m - 1
        return out

    @property
    def num_edges(self):
        return sum(row.bit_count() for row in self.adj) // 2

    def label_of(self, v):
        return self.labels[v] if self.labels is not None else (v,)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


def from_edges(n, edges, labels=None):
    """Build a Graph from an edge list (ignores duplicates, rejects loops)."""
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop ({u},{v}) rejected")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows), labels)


@dataclass(frozen=True)
class ProductIndex:
    """Mixed-radix indexing of product vertices; leftmost factor is most
    significant."""

    radices: tuple

    def __post_init__(self):
        if not self.radices or any(r < 1 for r in self.radices):
            raise GraphError("radices must be positive")

    @property
    def size(self):
        out = 1
        for r in self.radices:
            out *= r
        return out

    def encode(self, coords):
        if len(coords) != len(self.radices):
            raise GraphError("coordinate arity mismatch")
        out = 0
        for c, r in zip(coords, self.radices):
            if not 0 <= c < r:
                raise GraphError(f"coordinate {c} out of range [0,{r})")
            out = out * r + c
        return out

    def decode(self, idx):
        if not 0 <= idx < self.size:
            raise GraphError(f"index {idx} out of range")
        coords = []
        for r in reversed(self.radices):
            coords.append(idx % r)
            idx //= r
        return tuple(reversed(coords))


# -- generators ----------------------------------------------------------


def generate(kind, n):
    """Standard graph families: cycle, path, complete, empty."""
    if n < 1:
        raise GraphError("n must be >= 1")
    if kind == "cycle":
        if n < 3:
            raise GraphError("cycle needs n >= 3")
        return from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "path":
        return from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "complete":
        return from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if kind == "empty":
        return from_edges(n, [])
    raise GraphError(f"unknown graph kind {kind!r}")


def cycle(n):
    return generate("cycle", n)


def path(n):
    return generate("path", n)


def complete(n):
    return generate("complete", n)


def empty(n):
    return generate("empty", n)


# -- unary / binary operations --------------------------------------------


def complement(G):
    """Switch edges and non-edges (diagonal stays clear); an involution."""
    full = (1 << G.n) - 1
    rows = tuple(~row & full & ~(1 << v) for v, row in enumerate(G.adj))
    return Graph(G.n, rows, G.labels)


def _check_limit(size, vertex_limit):
    if size > vertex_limit:
        raise VertexLimitError(
            f"product would have {size} vertices (> limit {vertex_limit}); "
            "pass a larger vertex_limit to override"
        )


def _concat_labels(G, H):
    return tuple(
        G.label_of(a) + H.label_of(b) for a in range(G.n) for b in range(H.n)
    )


def strong_product(G, H, vertex_limit=DEFAULT_VERTEX_LIMIT):
    """(a,b)~(c,d) iff each coordinate is equal or adjacent and the pairs
    differ."""
    n = G.n * H.n
    _check_limit(n, vertex_limit)
    nH = H.n
    # reflexive closure rows of both factors
    rg = [G.adj[a] | (1 << a) for a in range(G.n)]
    rh = [H.adj[b] | (1 << b) for b in range(H.n)]
    rows = []
    for a in range(G.n):
        blocks = rg[a]
        for b in range(H.n):
            row = 0
            m = blocks
            while m:
                c = (m & -m).bit_length() - 1
                m &= m - 1
                row |= rh[b] << (c * nH)
            row &= ~(1 << (a * nH + b))
            rows.append(row)
    return Graph(n, tuple(rows), _concat_labels(G, H))


def conormal_product(G, H, vertex_limit=DEFAULT_VERTEX_LIMIT):
    """(a,b)~(c,d) iff adjacent in the first or in the second coordinate."""
    n = G.n * H.n
    _check_limit(n, vertex_limit)
    nH = H.n
    all_h = (1 << nH) - 1
    col = 0  # every block gets H-adjacency of b
    for c in range(G.n):
        col |= 1 << (c * nH)
    rows = []
    for a in range(G.n):
        gpart = 0
        m = G.adj[a]
        while m:
            c = (m & -m).bit_length() - 1
            m &= m - 1
            gpart |= all_h << (c * nH)
        for b in range(H.n):
            hpart = 0
            mh = H.adj[b]
            while mh:
                d = (mh & -mh).bit_length() - 1
                mh &= mh - 1
                hpart |= col << d
            rows.append(gpart | hpart)
    return Graph(n, tuple(rows), _concat_labels(G, H))


def strong_power(G, k, vertex_limit=DEFAULT_VERTEX_LIMIT):
    """Iterated strong product; labels are flat k-digit coordinates."""
    if k < 1:
        raise GraphError("power k must be >= 1")
    _check_limit(G.n**k, vertex_limit)
    base = G if G.labels is not None else Graph(
        G.n, G.adj, tuple((v,) for v in range(G.n))
    )
    return reduce(
        lambda A, B: strong_product(A, B, vertex_limit=vertex_limit),
        [base] * k,
    )


def disjoint_union(G, H):
    """Block-diagonal sum; alpha adds, omega takes the max."""
    rows = list(G.adj) + [row << G.n for row in H.adj]
    return Graph(G.n + H.n, tuple(rows), None)


# -- isomorphism (test support) -------------------------------------------

_EXACT_ISO_LIMIT = 12


def _invariants(G):
    degs = sorted(G.adj[v].bit_count() for v in range(G.n))
    nbr_degs = sorted(
        tuple(sorted(G.adj[u].bit_count() for u in G.neighbors(v)))
        for v in range(G.n)
    )
    tri = 0
    for u, v in G.edges():
        tri += (G.adj[u] & G.adj[v]).bit_count()
    return (G.n, G.num_edges, tuple(degs), tuple(nbr_degs), tri)


def is_isomorphic(G, H):
    """Exact backtracking for n <= 12; invariant comparison beyond that."""
    if _invariants(G) != _invariants(H):
        return False
    if G.n > _EXACT_ISO_LIMIT:
        return True  # canonical invariants agree; exact check out of range
    n = G.n
    degH = [H.adj[v].bit_count() for v in range(n)]
    degG = [G.adj[v].bit_count() for v in range(n)]
    mapping = [-1] * n
    used = [False] * n

    def extend(v):
        if v == n:
            return True
        for w in range(n):
            if used[w] or degG[v] != degH[w]:
                continue
            ok = True
            for u in range(v):
                if bool(G.adj[v] >> u & 1) != bool(H.adj[w] >> mapping[u] & 1):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                used[w] = False
        return False

    return extend(0)
