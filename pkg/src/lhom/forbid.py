"""Certified forbidding polynomials.

A request names cover vertices with incomparable candidate lists, a color
tuple S0 on them with no common neighbor in a target list L, and asks for a
GF(2) polynomial that is nonzero on S0 and zero on every tuple that does
have a common neighbor in L.  Tuples in neither class are deliberately
unconstrained.  Every constructor certifies its output by exhausting the
candidate product before returning.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bitset import bit_list, iter_bits, mask_of, popcount
from .errors import BudgetExceededError, CertificationError
from .graphs import Graph, common_neighbors, is_incomparable_set
from .gf2 import Gf2Poly, poly_local
from .invariants import compute_d_star

DEFAULT_CERT_BUDGET = 2_000_000


@dataclass(frozen=True)
class ForbidRequest:
    target: Graph
    l_mask: int
    lists: tuple[int, ...]
    verts: tuple[int, ...]
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        r = len(self.verts)
        if r < 1:
            raise ValueError("a request needs at least one position")
        if len(self.lists) != r or len(self.colors) != r:
            raise ValueError("lists, verts and colors must have equal length")
        if len(set(self.verts)) != r:
            raise ValueError("vertices must be distinct")
        if self.l_mask & ~self.target.full_mask:
            raise ValueError("target list out of range")
        for i, (f, c) in enumerate(zip(self.lists, self.colors)):
            if f & ~self.target.full_mask:
                raise ValueError(f"candidate list {i} out of range")
            if not f >> c & 1:
                raise ValueError(f"color {c} not in candidate list {i}")
            if not is_incomparable_set(self.target, f):
                raise ValueError(f"candidate list {i} is not incomparable")
        if common_neighbors(self.target, mask_of(self.colors), self.l_mask):
            raise ValueError("the forbidden tuple has a common neighbor in L")

    @property
    def width(self) -> int:
        return len(self.verts)


@dataclass(frozen=True)
class ForbidResult:
    poly: Gf2Poly
    degree: int
    method: str


def certify_forbid(req: ForbidRequest, poly: Gf2Poly,
                   budget: int = DEFAULT_CERT_BUDGET) -> bool:
    """Exhaustively check the forbidding contract over the candidate product."""
    size = 1
    for f in req.lists:
        size *= popcount(f)
    extras = sorted(poly.vertices() - set(req.verts))
    for _ in extras:
        size *= req.target.n
    if size > budget:
        raise BudgetExceededError(
            f"certification needs {size} evaluations, budget is {budget}")
    if extras:
        return _certify_dense(req, poly, extras)
    return _certify_sparse(req, poly)


def _has_common_neighbor(req: ForbidRequest, tup: tuple[int, ...]) -> bool:
    return bool(common_neighbors(req.target, mask_of(tup), req.l_mask))


def _certify_dense(req, poly, extras) -> bool:
    lists = [bit_list(f) for f in req.lists]
    all_colors = list(range(req.target.n))
    for tup in itertools.product(*lists):
        colors = dict(zip(req.verts, tup))
        pinned = tup == req.colors
        free = not pinned and not _has_common_neighbor(req, tup)
        for extra_tup in itertools.product(all_colors, repeat=len(extras)):
            colors.update(zip(extras, extra_tup))
            val = poly.eval(colors)
            if pinned and val == 0:
                return False
            if not pinned and not free and val != 0:
                return False
    return True


def _certify_sparse(req, poly) -> bool:
    """Parity of each tuple via monomial completions; untouched tuples are 0."""
    r = req.width
    pos_of = {v: i for i, v in enumerate(req.verts)}
    lists = [bit_list(f) for f in req.lists]
    parity: dict[tuple[int, ...], int] = {}
    for mono in poly.monomials:
        required: dict[int, int] = {}
        feasible = True
        for v, c in mono:
            pos = pos_of[v]
            if required.get(pos, c) != c or not req.lists[pos] >> c & 1:
                feasible = False
                break
            required[pos] = c
        if not feasible:
            continue
        free = [i for i in range(r) if i not in required]
        for combo in itertools.product(*[lists[i] for i in free]):
            tup = [0] * r
            for pos, c in required.items():
                tup[pos] = c
            for pos, c in zip(free, combo):
                tup[pos] = c
            key = tuple(tup)
            parity[key] = parity.get(key, 0) ^ 1
    if parity.get(req.colors, 0) != 1:
        return False
    for tup, par in parity.items():
        if par and tup != req.colors and _has_common_neighbor(req, tup):
            return False
    return True


def _certified(req, poly, method, budget) -> ForbidResult:
    if not certify_forbid(req, poly, budget):
        raise CertificationError(
            f"{method} construction failed certification for tuple {req.colors}")
    return ForbidResult(poly, poly.degree(), method)


def forbid_monomial(req: ForbidRequest,
                    budget: int = DEFAULT_CERT_BUDGET) -> ForbidResult:
    """The product of the tuple's own variables; degree equals the width."""
    poly = Gf2Poly.product_of_vars(zip(req.verts, req.colors))
    return _certified(req, poly, "monomial", budget)


def cycle_frame(g: Graph) -> tuple[int, ...] | None:
    """Cyclic vertex order when g is a single loopless cycle, else None."""
    if g.n < 3 or any(g.degree(v) != 2 or g.adj[v] >> v & 1 for v in range(g.n)):
        return None
    frame = [0]
    prev = None
    while True:
        nbrs = [u for u in iter_bits(g.adj[frame[-1]]) if u != prev]
        nxt = nbrs[0]
        if nxt == 0:
            break
        prev = frame[-1]
        frame.append(nxt)
    return tuple(frame) if len(frame) == g.n else None


def forbid_c6(req: ForbidRequest, frame: tuple[int, ...] | None = None,
              budget: int = DEFAULT_CERT_BUDGET) -> ForbidResult:
    """Degree-2 construction on the 6-cycle.

    A minimal width-3 tuple must hit one bipartition class of the cycle;
    the polynomial is the sum of the three exactly-once pair blocks, which
    fires an odd number of times exactly on that class.  Width <= 2 falls
    back to the plain monomial.
    """
    if frame is None:
        frame = cycle_frame(req.target)
    if frame is None or req.target.n != 6:
        raise ValueError("target is not a 6-cycle")
    if req.width > 3:
        raise ValueError("width exceeds 3")
    if req.width <= 2:
        return forbid_monomial(req, budget)
    pos = {v: i for i, v in enumerate(frame)}
    classes = ({frame[0], frame[2], frame[4]}, {frame[1], frame[3], frame[5]})
    s_set = set(req.colors)
    if s_set not in classes:
        raise ValueError(
            f"tuple {req.colors} is not a parity class of the cycle; "
            "only minimal no-common-neighbor triples can be forbidden here")
    poly = Gf2Poly.sum_of(
        poly_local(pair, req.verts, req.target.n)
        for pair in itertools.combinations(sorted(s_set, key=lambda v: pos[v]), 2))
    return _certified(req, poly, "c6", budget)


def _cyclic_dist(k: int, u: int, v: int) -> int:
    d = abs(u - v) % k
    return min(d, k - d)


def _is_cycle_power(g: Graph, k: int, p: int) -> bool:
    if g.n != k:
        return False
    for u in range(k):
        want = 0
        for v in range(k):
            if v != u and _cyclic_dist(k, u, v) <= p:
                want |= 1 << v
        if g.adj[u] != want:
            return False
    return True


def forbid_cycle_power(req: ForbidRequest, k: int, p: int,
                       budget: int = DEFAULT_CERT_BUDGET) -> ForbidResult:
    """Degree-p construction on the p-th power of a long cycle.

    Sums the exactly-once blocks of the sets {i, j, j+1, ..., j+p-2} over
    anchor pairs (i, j) at cyclic distance 2..2p with j moving away from i.
    Minimal width-(p+1) tuples fire an odd number of blocks; tuples with a
    common neighbor fire an even number.
    """
    if p < 2:
        raise ValueError("power must be at least 2")
    if k <= 6 * p:
        raise ValueError(f"cycle length {k} not above 6p = {6 * p}")
    if not _is_cycle_power(req.target, k, p):
        raise ValueError("target does not match the declared cycle power")
    if req.width != p + 1 or len(set(req.colors)) != p + 1:
        raise ValueError("tuple must use p + 1 distinct colors")
    poly = _cycle_power_poly(k, p, req.verts)
    return _certified(req, poly, "cycle-power", budget)


_CYCLE_POWER_POLYS: dict = {}


def _cycle_power_poly(k: int, p: int, verts: tuple[int, ...]) -> Gf2Poly:
    # the anchor-block sum does not depend on the forbidden tuple
    key = (k, p, verts)
    poly = _CYCLE_POWER_POLYS.get(key)
    if poly is not None:
        return poly
    blocks = []
    for i in range(k):
        for j in range(k):
            dist = _cyclic_dist(k, i, j)
            if not 2 <= dist <= 2 * p:
                continue
            if dist >= _cyclic_dist(k, i, (j + 1) % k):
                continue
            block = {i} | {(j + t) % k for t in range(p - 1)}
            blocks.append(poly_local(block, verts, k))
    poly = Gf2Poly.sum_of(blocks)
    _CYCLE_POWER_POLYS[key] = poly
    return poly


def forbid_linear_system(req: ForbidRequest, target_degree: int,
                         budget: int = DEFAULT_CERT_BUDGET) -> ForbidResult | None:
    """Synthesize a degree-bounded polynomial by solving a GF(2) system.

    Unknowns are coefficients over all target-degree color subsets; each
    achievable width-r set with a common neighbor in L pins its shadow sum
    to 0 and the forbidden set pins its own to 1.  Returns None when the
    system is inconsistent.  Consistency is guaranteed in the regime where
    the width equals both the marking degree and the maximum degree.
    Requests no wider than the target degree need no system at all and
    fall back to the plain monomial.
    """
    r = req.width
    if target_degree < 1:
        raise ValueError("target degree must be positive")
    if r <= target_degree:
        return forbid_monomial(req, budget)
    if r != target_degree + 1:
        raise ValueError("width exceeds target degree + 1")
    if len(set(req.colors)) != r:
        raise ValueError("tuple colors must be distinct")
    hg = req.target
    columns = list(itertools.combinations(range(hg.n), target_degree))
    col_index = {s: i for i, s in enumerate(columns)}

    def shadow_row(colors) -> int:
        row = 0
        for sub in itertools.combinations(sorted(colors), target_degree):
            row |= 1 << col_index[sub]
        return row

    union = 0
    for f in req.lists:
        union |= f
    rows, rhs = [], []
    for combo in itertools.combinations(bit_list(union), r):
        if not common_neighbors(hg, mask_of(combo), req.l_mask):
            continue
        if not _achievable(req.lists, combo):
            continue
        rows.append(shadow_row(combo))
        rhs.append(0)
    rows.append(shadow_row(req.colors))
    rhs.append(1)
    from .gf2 import solve_linear_system

    sol = solve_linear_system(rows, rhs, len(columns))
    if sol is None:
        return None
    poly = Gf2Poly.sum_of(poly_local(columns[j], req.verts, hg.n)
                          for j, bit in enumerate(sol) if bit)
    return _certified(req, poly, "linear-system", budget)


def _achievable(lists: tuple[int, ...], combo) -> bool:
    """Can the color set be placed on the positions respecting all lists?"""
    for perm in itertools.permutations(combo):
        if all(lists[i] >> c & 1 for i, c in enumerate(perm)):
            return True
    return False


def minimal_subrequest(req: ForbidRequest) -> tuple[ForbidRequest, tuple[int, ...]]:
    """Shrink to a minimal no-common-neighbor subsequence (high positions first)."""
    kept = list(range(req.width))
    for pos in reversed(range(req.width)):
        if len(kept) == 1:
            break
        trial = [i for i in kept if i != pos]
        colors = mask_of(req.colors[i] for i in trial)
        if not common_neighbors(req.target, colors, req.l_mask):
            kept = trial
    if len(kept) == req.width:
        return req, tuple(kept)
    sub = ForbidRequest(
        req.target, req.l_mask,
        tuple(req.lists[i] for i in kept),
        tuple(req.verts[i] for i in kept),
        tuple(req.colors[i] for i in kept))
    return sub, tuple(kept)


def forbid(req: ForbidRequest, cycle_power: tuple[int, int] | None = None,
           budget: int = DEFAULT_CERT_BUDGET) -> ForbidResult:
    """Best certified construction for a request.

    Tries, in order: minimal subsequence reduction, the 6-cycle and
    cycle-power special cases, the linear-system synthesizer at the
    lower-bound order, and finally the plain monomial.
    """
    sub, _ = minimal_subrequest(req)
    hg = req.target
    if cycle_power is not None:
        k, p = cycle_power
        if p >= 2 and k > 6 * p and sub.width == p + 1:
            if _is_cycle_power(hg, k, p):
                return forbid_cycle_power(sub, k, p, budget)
    if hg.n == 6 and sub.width <= 3 and cycle_frame(hg) is not None:
        return forbid_c6(sub, budget=budget)
    d_star, _ = compute_d_star(hg)
    if sub.width == d_star + 1 and d_star >= 1 and len(set(sub.colors)) == sub.width:
        result = forbid_linear_system(sub, d_star, budget)
        if result is not None:
            return result
    return forbid_monomial(sub, budget)
