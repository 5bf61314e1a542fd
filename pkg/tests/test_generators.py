import pytest

from lhom.bitset import bit_list
from lhom.formats import write_instance
from lhom.generators import (SplitMix64, gen_cycle_power, gen_instance,
                             gen_subdivided_star)
from lhom.invariants import all_essential_sets, compute_c_star
from lhom.solver import decide


def test_cycle_power_p1_is_cycle():
    c6 = gen_cycle_power(6, 1)
    assert c6.edges() == [(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)]


def test_cycle_power_degrees():
    c13 = gen_cycle_power(13, 2)
    assert all(c13.degree(v) == 4 for v in range(13))


def test_cycle_power_distance_rule():
    # 0 and 4 are at cyclic distance 4 in a 13-cycle
    for p in (1, 2, 3):
        g = gen_cycle_power(13, p)
        assert g.has_edge(0, 4) == (p >= 4)
    assert gen_cycle_power(13, 4).has_edge(0, 4)


def test_cycle_power_validates_input():
    with pytest.raises(ValueError):
        gen_cycle_power(2, 1)


def test_subdivided_star_shape():
    star = gen_subdivided_star(3)
    assert star.n == 10
    assert star.degree(0) == 3
    assert sorted(star.degree(v) for v in range(10)) == [1, 1, 1, 2, 2, 2, 2, 2, 2, 3]


def test_minimal_witnesses_of_cycle_power_match_known_forms():
    for k, p in ((13, 2), (19, 3)):
        g = gen_cycle_power(k, p)
        assert compute_c_star(g).value == p + 1
        consecutive = {frozenset((i + t) % k for t in range(p + 1))
                       for i in range(k)}
        gapped = {frozenset({i} | {(i + t) % k for t in range(2, p + 1)}
                            | {(i + p + 2) % k}) for i in range(k)}
        for s_mask in all_essential_sets(g, size=p + 1):
            s = frozenset(bit_list(s_mask))
            assert s in consecutive or s in gapped, sorted(s)


def test_instance_planted_yes_is_always_yes(c6, k4):
    for hg in (c6, k4):
        for seed in range(25):
            inst = gen_instance(hg, 12, 4, seed, "planted-yes")
            assert decide(inst, hg)[0] is True


def test_instance_random_mode_hits_both_answers(c6):
    answers = {decide(gen_instance(c6, 8, 3, seed), c6)[0]
               for seed in range(30)}
    assert answers == {True, False}


def test_instance_structure(c6):
    inst = gen_instance(c6, 15, 5, 3)
    assert inst.cover == (1 << 5) - 1
    for v in range(5, 15):
        assert inst.graph.adj[v] & ~inst.cover == 0  # outside is independent
        assert inst.lists[v]
    with pytest.raises(ValueError):
        gen_instance(c6, 4, 5, 0)
    with pytest.raises(ValueError):
        gen_instance(c6, 4, 2, 0, "bogus")


def test_instance_deterministic_bytes(c6):
    a = write_instance(gen_instance(c6, 14, 4, 99), 6, ("gen: instance seed=99",))
    b = write_instance(gen_instance(c6, 14, 4, 99), 6, ("gen: instance seed=99",))
    assert a == b
    c = write_instance(gen_instance(c6, 14, 4, 100), 6)
    assert a != c


def test_splitmix_reference_stream():
    # first outputs for seed 0; fixed by the permutation constants
    rng = SplitMix64(0)
    first = [rng.next() for _ in range(3)]
    assert first == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_splitmix_below_range():
    rng = SplitMix64(7)
    vals = [rng.below(10) for _ in range(200)]
    assert set(vals) <= set(range(10))
    assert len(set(vals)) == 10
