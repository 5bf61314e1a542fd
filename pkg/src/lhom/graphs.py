"""Graphs with optional loops, list instances, and neighborhood set algebra.

Vertices are dense 0-based indices.  Neighbor sets are stored as int bit
masks, so a loop on v shows up as bit v of adj[v] and contributes exactly 1
to the degree.  The same representation serves both the fixed target graph
(whose vertices are "colors") and instance graphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bitset import bit_list, iter_bits, mask_of, popcount


@dataclass(frozen=True)
class Graph:
    """Undirected graph, loops allowed; adj[v] is the neighbor mask of v."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency length must equal vertex count")
        full = (1 << self.n) - 1
        for v, mask in enumerate(self.adj):
            if mask & ~full:
                raise ValueError(f"neighbor of {v} out of range")
        for v in range(self.n):
            for u in iter_bits(self.adj[v]):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({u}, {v})")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def max_degree(self) -> int:
        return max((popcount(a) for a in self.adj), default=0)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u <= v; a loop appears as (v, v)."""
        out = []
        for v in range(self.n):
            for u in iter_bits(self.adj[v]):
                if u >= v:
                    out.append((v, u))
        return out

    def edge_count(self) -> int:
        return len(self.edges())


def common_neighbors(hg: Graph, s_mask: int, l_mask: int) -> int:
    """Mask of vertices in L adjacent to every vertex of S.

    For S = 0 (empty set) this is L itself.  A looped vertex can be a
    common neighbor of a set containing it.
    """
    w = hg.full_mask
    m = s_mask
    while m and w:
        low = m & -m
        m ^= low
        w &= hg.adj[low.bit_length() - 1]
    return w & l_mask


def incomparable(hg: Graph, u: int, v: int) -> bool:
    """True iff neither of N(u), N(v) contains the other."""
    nu, nv = hg.adj[u], hg.adj[v]
    return bool(nu & ~nv) and bool(nv & ~nu)


def is_incomparable_set(hg: Graph, mask: int) -> bool:
    vs = bit_list(mask)
    return all(incomparable(hg, a, b) for a, b in itertools.combinations(vs, 2))


@dataclass(frozen=True)
class Instance:
    """Input graph with one color list per vertex and an optional cover.

    Lists are masks over the target graph's vertices.  When `cover` is
    present, deleting it from the graph must leave no edge.
    """

    graph: Graph
    lists: tuple[int, ...]
    cover: int | None = None

    def __post_init__(self) -> None:
        if len(self.lists) != self.graph.n:
            raise ValueError("one list per vertex is required")
        if self.cover is not None:
            if self.cover & ~self.graph.full_mask:
                raise ValueError("cover vertex out of range")
            for v in range(self.graph.n):
                if self.cover >> v & 1:
                    continue
                if self.graph.adj[v] & ~self.cover:
                    raise ValueError("designated cover does not cover all edges")
                if self.graph.adj[v] >> v & 1:
                    raise ValueError("looped vertex outside designated cover")

    def list_of(self, v: int) -> int:
        return self.lists[v]


def validate_instance(inst: Instance, hg: Graph) -> None:
    """Check that every list is a subset of the target's vertex set."""
    for v, mask in enumerate(inst.lists):
        if mask & ~hg.full_mask:
            raise ValueError(f"list of vertex {v} mentions unknown colors")


def dominant_subset(hg: Graph, mask: int) -> int:
    """Drop every member dominated inside the set; the result is incomparable.

    x is dominated by y when N(x) is a subset of N(y); on ties (equal
    neighborhoods) the larger index goes.
    """
    keep = 0
    for x in iter_bits(mask):
        nx = hg.adj[x]
        dominated = False
        for y in iter_bits(mask):
            if y == x:
                continue
            ny = hg.adj[y]
            if nx & ~ny:
                continue
            if nx != ny or y < x:
                dominated = True
                break
        if not dominated:
            keep |= 1 << x
    return keep


def reduce_lists(inst: Instance, hg: Graph) -> Instance:
    """Shrink every list to an incomparable set by deleting dominated colors.

    Dropping a dominated color never flips the yes/no status: any
    homomorphism using it can switch to a dominating color.  The operation
    is idempotent.
    """
    validate_instance(inst, hg)
    return Instance(inst.graph,
                    tuple(dominant_subset(hg, mask) for mask in inst.lists),
                    inst.cover)


@dataclass(frozen=True)
class VertexCoverCertificate:
    cover: int
    approx_factor: int

    def size(self) -> int:
        return popcount(self.cover)


def greedy_vertex_cover(g: Graph) -> VertexCoverCertificate:
    """2-approximate cover: take looped vertices, then both ends of a maximal matching."""
    cover = 0
    for v in range(g.n):
        if g.adj[v] >> v & 1:
            cover |= 1 << v
    for v, u in g.edges():
        if v == u:
            continue
        if not (cover >> v & 1 or cover >> u & 1):
            cover |= 1 << v | 1 << u
    return VertexCoverCertificate(cover, 2)


def cover_certificate(inst: Instance) -> VertexCoverCertificate:
    """The designated cover when present (factor 1), else the greedy one."""
    if inst.cover is not None:
        return VertexCoverCertificate(inst.cover, 1)
    return greedy_vertex_cover(inst.graph)


def restricted_instance(inst: Instance, kept: list[int],
                        extra_edges=None) -> tuple[Instance, tuple[int, ...]]:
    """Re-index `kept` vertices (ascending) into a fresh instance.

    Only edges with both ends kept survive; `extra_edges` replaces the edge
    set entirely when given (pairs in original ids).  Returns the instance
    and the original-id map.
    """
    kept = sorted(kept)
    index = {v: i for i, v in enumerate(kept)}
    n = len(kept)
    if extra_edges is None:
        edges = [(index[u], index[v]) for u, v in inst.graph.edges()
                 if u in index and v in index]
    else:
        edges = [(index[u], index[v]) for u, v in extra_edges]
    g = Graph.from_edges(n, edges)
    lists = tuple(inst.lists[v] for v in kept)
    cover = None
    if inst.cover is not None:
        cover = mask_of(index[v] for v in bit_list(inst.cover) if v in index)
    return Instance(g, lists, cover), tuple(kept)
