import pytest

from lhom.bitset import mask_of, popcount
from lhom.errors import CertificationError
from lhom.generators import SplitMix64
from lhom.graphs import Graph
from lhom.invariants import LowerBoundStructure, compute_d_star, find_lbs
from lhom.reductions import (build_comp, build_neq, build_variable_gadget,
                             reduce_sat, variable_gadget_states)
from lhom.solver import decide, enumerate_restricted

from oracle import brute_sat


@pytest.fixture(scope="module")
def k4_lbs(k4):
    d, lbs = compute_d_star(k4)
    assert d == 3
    return lbs


def test_neq_all_indices(k4, k4_lbs):
    for i in range(3):
        g = build_neq(k4, k4_lbs, i)
        assert g.graph.n == 10
        x, xp = k4_lbs.xs[i], k4_lbs.xps[i]
        got = enumerate_restricted(g.instance(), k4, [g.u, g.v])
        assert got == {(x, xp), (xp, x)}
        assert g.lists[g.u] == g.lists[g.v] == mask_of([x, xp])


def test_comp_all_pairs(k4, k4_lbs):
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            g = build_comp(k4, k4_lbs, i, j)
            assert g.graph.n == 10
            a, ap = k4_lbs.xs[i], k4_lbs.xps[i]
            b, bp = k4_lbs.xs[j], k4_lbs.xps[j]
            got = enumerate_restricted(g.instance(), k4, [g.u, g.v])
            assert got == {(a, b), (ap, bp)}


def test_gadgets_require_order_three(k4, k4_lbs):
    small = LowerBoundStructure(2, k4_lbs.l_mask, k4_lbs.xs[:2], k4_lbs.xps[:2])
    with pytest.raises(ValueError):
        build_neq(k4, small, 0)
    with pytest.raises(ValueError):
        build_comp(k4, small, 0, 1)


def test_invalid_structure_is_rejected(k4):
    # claims order 3 but the replacement patterns have no witnesses
    fake = LowerBoundStructure(3, 0, (0, 1, 2), (1, 2, 3))
    with pytest.raises((ValueError, CertificationError)):
        build_neq(k4, fake, 0)


def test_variable_gadget(k4, k4_lbs):
    vg = build_variable_gadget(k4, k4_lbs)
    assert vg.graph.n == 18 * 3 - 8 == 46
    targets = list(vg.specials_a) + list(vg.specials_abar)
    got = enumerate_restricted(vg.instance(), k4, targets)
    phi_false, phi_true = variable_gadget_states(k4_lbs)
    assert got == {phi_false, phi_true}
    # false state maps a_i to the base colors, true state to the primed ones
    assert phi_false[:3] == k4_lbs.xs
    assert phi_true[:3] == k4_lbs.xps


def test_reduce_sat_single_tautology(k4, k4_lbs):
    inst = reduce_sat(1, [[1, 1, 1]], k4, k4_lbs)
    assert decide(inst, k4)[0] is True
    assert popcount(inst.cover) == 46


def test_reduce_sat_contradiction(k4, k4_lbs):
    inst = reduce_sat(1, [[1], [-1]], k4, k4_lbs)
    assert decide(inst, k4)[0] is False


def test_reduce_sat_empty_clause(k4, k4_lbs):
    inst = reduce_sat(2, [[1], []], k4, k4_lbs)
    assert decide(inst, k4)[0] is False


def test_reduce_sat_wide_clause_rejected(k4, k4_lbs):
    with pytest.raises(ValueError):
        reduce_sat(4, [[1, 2, 3, 4]], k4, k4_lbs)


def test_reduce_sat_bad_literal(k4, k4_lbs):
    with pytest.raises(ValueError):
        reduce_sat(1, [[2]], k4, k4_lbs)


def test_reduce_sat_cover_is_linear_in_vars(k4, k4_lbs):
    for nvars in (1, 2, 4):
        inst = reduce_sat(nvars, [[1, -1]], k4, k4_lbs)
        assert popcount(inst.cover) == 46 * nvars


def test_reduce_sat_clause_vertices_independent(k4, k4_lbs):
    inst = reduce_sat(3, [[1, 2, 3], [-1, -2, -3]], k4, k4_lbs)
    outside = [v for v in range(inst.graph.n) if not inst.cover >> v & 1]
    assert len(outside) == 2
    for u in outside:
        for v in outside:
            assert not inst.graph.has_edge(u, v)


def test_reduce_sat_matches_bruteforce(k4, k4_lbs):
    rng = SplitMix64(71)
    for _ in range(8):
        nvars = 3 + rng.below(3)
        clauses = []
        for _ in range(3 + rng.below(7)):
            clauses.append([(1 if rng.below(2) else -1) * (1 + rng.below(nvars))
                            for _ in range(1 + rng.below(3))])
        inst = reduce_sat(nvars, clauses, k4, k4_lbs)
        assert decide(inst, k4)[0] == brute_sat(nvars, clauses)


def test_gadgets_on_another_target():
    # the 5-clique carries order-3 structures too; the whole gadget stack
    # must certify against it as well
    k5 = Graph.from_edges(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
    lbs = find_lbs(k5, 3)
    assert lbs is not None
    vg = build_variable_gadget(k5, lbs)
    assert vg.graph.n == 46


def test_order_four_reduction_on_k5():
    """Width-4 clauses with padding, using the 5-clique's full order."""
    k5 = Graph.from_edges(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
    d, lbs = compute_d_star(k5)
    assert d == 4
    vg = build_variable_gadget(k5, lbs)
    assert vg.graph.n == 18 * 4 - 8
    rng = SplitMix64(72)
    for _ in range(6):
        nvars = 3 + rng.below(3)
        clauses = [[(1 if rng.below(2) else -1) * (1 + rng.below(nvars))
                    for _ in range(1 + rng.below(4))]
                   for _ in range(3 + rng.below(8))]
        inst = reduce_sat(nvars, clauses, k5, lbs)
        assert popcount(inst.cover) == 64 * nvars
        assert decide(inst, k5)[0] == brute_sat(nvars, clauses)
