"""Kernelization pipelines: the marking scheme and the polynomial method.

Both take an instance with a vertex cover X, keep G[X] whole, and prune the
outside independent set down to a bounded-size core that preserves the
yes/no status.  Marking keeps one representative per (neighborhood subset,
list) type; the polynomial method encodes each outside constraint as a
certified forbidding polynomial and keeps a GF(2) row basis.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .bitset import bit_list, iter_bits, mask_of
from .forbid import (DEFAULT_CERT_BUDGET, ForbidRequest, forbid,
                     forbid_monomial, minimal_subrequest)
from .graphs import (Graph, Instance, common_neighbors, cover_certificate,
                     reduce_lists, restricted_instance)
from .gf2 import Gf2Poly, extract_basis
from .invariants import compute_c_star


@dataclass(frozen=True)
class KernelReport:
    kernel: Instance
    method: str
    degree_used: int
    vertices_in: int
    edges_in: int
    vertices_out: int
    edges_out: int
    bound_k: int
    bound_formula_ok: bool
    vertex_map: tuple[int, ...]
    constraints_total: int = 0
    constraints_retained: int = 0


def _trivial_no_kernel(inst: Instance, method: str, bound_k: int) -> KernelReport:
    kernel = Instance(Graph.from_edges(1, []), (0,), 0)
    return KernelReport(
        kernel=kernel, method=method, degree_used=0,
        vertices_in=inst.graph.n, edges_in=inst.graph.edge_count(),
        vertices_out=1, edges_out=0, bound_k=bound_k,
        bound_formula_ok=True, vertex_map=(-1,))


def kernel_marking(inst: Instance, hg: Graph) -> KernelReport:
    """Keep one outside vertex per (cover subset of size <= c_star, list) type.

    The representative for a type is the lowest-index candidate; it keeps
    its edges into every subset it represents and loses all others.
    """
    cert = cover_certificate(inst)
    k = cert.size()
    if any(not m for m in inst.lists):
        return _trivial_no_kernel(inst, "marking", k)
    c = compute_c_star(hg).value
    cover = cert.cover
    chosen: dict[tuple[int, int], int] = {}
    for v in range(inst.graph.n):
        if cover >> v & 1:
            continue
        nbrs = bit_list(inst.graph.adj[v])
        for r in range(0, min(c, len(nbrs)) + 1):
            for combo in itertools.combinations(nbrs, r):
                key = (mask_of(combo), inst.lists[v])
                chosen.setdefault(key, v)
    kept_edges = {}
    for (x_mask, _), v in chosen.items():
        kept_edges[v] = kept_edges.get(v, 0) | x_mask
    kept = bit_list(cover) + sorted(kept_edges)
    edges = [(u, v) for u, v in inst.graph.edges()
             if cover >> u & 1 and cover >> v & 1]
    for v, x_mask in kept_edges.items():
        edges.extend((v, u) for u in iter_bits(x_mask))
    kernel, vmap = restricted_instance(
        Instance(inst.graph, inst.lists, cover), kept, extra_edges=edges)
    v_out, e_out = kernel.graph.n, kernel.graph.edge_count()
    h = hg.n
    bound_ok = (v_out <= k + 2 ** h * k ** c
                and e_out <= k * k + c * 2 ** h * k ** c)
    return KernelReport(
        kernel=kernel, method="marking", degree_used=c,
        vertices_in=inst.graph.n, edges_in=inst.graph.edge_count(),
        vertices_out=v_out, edges_out=e_out, bound_k=k,
        bound_formula_ok=bound_ok, vertex_map=vmap,
        constraints_total=len(chosen), constraints_retained=len(chosen))


_FORBID_CACHE: dict = {}


def _cached_forbid(hg: Graph, l_mask: int, lists: tuple[int, ...],
                   colors: tuple[int, ...], cycle_power, budget,
                   monomial_only: bool) -> Gf2Poly:
    """Forbidding polynomial on canonical positions 0..r-1, cached per pattern."""
    key = (hg, l_mask, lists, colors, cycle_power, monomial_only)
    poly = _FORBID_CACHE.get(key)
    if poly is None:
        req = ForbidRequest(hg, l_mask, lists, tuple(range(len(lists))), colors)
        if monomial_only:
            sub, _ = minimal_subrequest(req)
            poly = forbid_monomial(sub, budget=budget).poly
        else:
            poly = forbid(req, cycle_power=cycle_power, budget=budget).poly
        _FORBID_CACHE[key] = poly
    return poly


def kernel_poly(inst: Instance, hg: Graph,
                cycle_power: tuple[int, int] | None = None,
                budget: int = DEFAULT_CERT_BUDGET,
                monomial_only: bool = False) -> KernelReport:
    """Polynomial-method kernel.

    After list reduction, every no-common-neighbor tuple on every outside
    vertex's neighborhood subsets (size <= c_star) contributes a certified
    forbidding polynomial; a streaming GF(2) basis then decides which
    outside vertices and which of their edges survive.  With monomial_only
    the special constructions are skipped and every constraint is the plain
    tuple product of degree <= c_star.
    """
    cert = cover_certificate(inst)
    k = cert.size()
    if any(not m for m in inst.lists):
        return _trivial_no_kernel(inst, "poly", k)
    red = reduce_lists(inst, hg)
    cover = cert.cover
    c = compute_c_star(hg).value
    cover_vs = bit_list(cover)

    polys: list[Gf2Poly] = []
    meta: list[tuple] = []
    for v in cover_vs:
        for color in range(hg.n):
            if not red.lists[v] >> color & 1:
                polys.append(Gf2Poly.variable(v, color))
                meta.append(("list", v, color))
    for v in range(red.graph.n):
        if cover >> v & 1:
            continue
        l_mask = red.lists[v]
        nbrs = bit_list(red.graph.adj[v])
        for r in range(1, min(c, len(nbrs)) + 1):
            for combo in itertools.combinations(nbrs, r):
                f_lists = tuple(red.lists[u] for u in combo)
                for tup in itertools.product(*[bit_list(f) for f in f_lists]):
                    if common_neighbors(hg, mask_of(tup), l_mask):
                        continue
                    canon = _cached_forbid(hg, l_mask, f_lists, tup,
                                           cycle_power, budget, monomial_only)
                    remap = {i: u for i, u in enumerate(combo)}
                    polys.append(canon.remap_vertices(remap))
                    meta.append(("constr", v, combo))

    degree = max((p.degree() for p in polys), default=1)
    kept_idx = extract_basis(polys, m=k * hg.n, d=degree)

    kept_edges: dict[int, set[int]] = {}
    for idx in kept_idx:
        tag = meta[idx]
        if tag[0] == "constr":
            _, v, combo = tag
            kept_edges.setdefault(v, set()).update(combo)
    kept = cover_vs + sorted(kept_edges)
    edges = [(u, v) for u, v in red.graph.edges()
             if cover >> u & 1 and cover >> v & 1]
    for v, nbrs in kept_edges.items():
        edges.extend((v, u) for u in sorted(nbrs))
    kernel, vmap = restricted_instance(
        Instance(red.graph, red.lists, cover), kept, extra_edges=edges)
    retained = len(kept_idx)
    rank_bound = sum(math.comb(k * hg.n, i) for i in range(degree + 1))
    return KernelReport(
        kernel=kernel, method="poly", degree_used=degree,
        vertices_in=inst.graph.n, edges_in=inst.graph.edge_count(),
        vertices_out=kernel.graph.n, edges_out=kernel.graph.edge_count(),
        bound_k=k, bound_formula_ok=retained <= rank_bound, vertex_map=vmap,
        constraints_total=len(polys), constraints_retained=retained)


def kernelize(inst: Instance, hg: Graph, method: str,
              cycle_power: tuple[int, int] | None = None) -> KernelReport:
    if method == "marking":
        return kernel_marking(inst, hg)
    if method == "poly":
        return kernel_poly(inst, hg, cycle_power=cycle_power)
    raise ValueError(f"unknown kernel method {method!r}")
