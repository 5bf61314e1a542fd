import itertools
import math

import pytest

from lhom.generators import SplitMix64
from lhom.gf2 import Gf2Poly, extract_basis, poly_local, solve_linear_system


def bool_poly(monomial_sets):
    """Polynomial on 0/1 variables: variable v is the pair (v, 1)."""
    return Gf2Poly(frozenset(frozenset((v, 1) for v in ms)
                             for ms in monomial_sets))


def bool_eval(poly, bits):
    return poly.eval({v: b for v, b in enumerate(bits)})


def test_add_is_xor():
    p = bool_poly([{0}, {1}])
    q = bool_poly([{1}, {2}])
    assert p + q == bool_poly([{0}, {2}])


def test_mul_is_multilinear():
    y0 = bool_poly([{0}])
    assert y0 * y0 == y0
    p = bool_poly([{0}, {1}])
    assert p * p == bool_poly([{0}, {1}])  # cross terms cancel mod 2


def test_eval_examples():
    p = Gf2Poly.product_of_vars([(0, 0), (1, 1)])
    assert p.eval({0: 0, 1: 1}) == 1
    assert p.eval({0: 0, 1: 0}) == 0
    assert Gf2Poly.zero().eval({0: 0}) == 0
    assert Gf2Poly.one().eval({}) == 1


def test_eval_unassigned_vertex():
    p = Gf2Poly.variable(3, 0)
    with pytest.raises(ValueError):
        p.eval({0: 0})


def test_eval_additivity():
    rng = SplitMix64(41)
    for _ in range(50):
        p = bool_poly([{rng.below(5) for _ in range(1 + rng.below(3))}
                       for _ in range(rng.below(4))])
        q = bool_poly([{rng.below(5) for _ in range(1 + rng.below(3))}
                       for _ in range(rng.below(4))])
        bits = [rng.below(2) for _ in range(5)]
        assert bool_eval(p + q, bits) == bool_eval(p, bits) ^ bool_eval(q, bits)


def test_poly_local_exactly_once_contract():
    for h in range(2, 6):
        for size in range(0, 3):
            colors = list(range(size))
            verts = list(range(size + 1))
            poly = poly_local(colors, verts, h)
            assert poly.degree() == size
            for assignment in itertools.product(range(h), repeat=size + 1):
                want = int(all(assignment.count(c) == 1 for c in colors))
                got = poly.eval(dict(zip(verts, assignment)))
                assert got == want, (h, colors, assignment)


def test_poly_local_empty_set_is_one():
    assert poly_local([], [7], 3) == Gf2Poly.one()


def test_poly_local_validates_arity():
    with pytest.raises(ValueError):
        poly_local([0, 1], [0, 1], 5)
    with pytest.raises(ValueError):
        poly_local([0], [2, 2], 5)


def test_extract_basis_duplicate_rows():
    y1, y2, y3 = (bool_poly([{i}]) for i in (1, 2, 3))
    assert extract_basis([y1, y1, y1 + y2], m=4, d=1) == [0, 2]
    assert extract_basis([y1 + y2, y2 + y3, y1 + y3], m=4, d=1) == [0, 1]


def test_extract_basis_degree_check():
    with pytest.raises(ValueError):
        extract_basis([bool_poly([{0, 1, 2}])], m=4, d=2)


def test_extract_basis_rank_bound_random():
    rng = SplitMix64(42)
    m, d = 10, 2
    polys = []
    for _ in range(500):
        monos = [{rng.below(m), rng.below(m)} for _ in range(1 + rng.below(3))]
        polys.append(bool_poly(monos))
    kept = extract_basis(polys, m=m, d=d)
    assert len(kept) <= sum(math.comb(m, i) for i in range(d + 1)) == 56


def test_extract_basis_preserves_solution_set():
    rng = SplitMix64(43)
    for trial in range(15):
        m = 4 + rng.below(5)
        polys = []
        for _ in range(10 + rng.below(20)):
            monos = [{rng.below(m) for _ in range(1 + rng.below(2))}
                     for _ in range(1 + rng.below(3))]
            polys.append(bool_poly(monos))
        kept = set(extract_basis(polys, m=m, d=3))
        sub = [p for i, p in enumerate(polys) if i in kept]
        for bits in itertools.product((0, 1), repeat=m):
            all_zero = all(bool_eval(p, bits) == 0 for p in polys)
            sub_zero = all(bool_eval(p, bits) == 0 for p in sub)
            assert all_zero == sub_zero


def test_solve_linear_system_basic():
    sol = solve_linear_system([0b11], [0], 2)
    assert sol is not None and (sol[0] + sol[1]) % 2 == 0
    assert solve_linear_system([0b01, 0b01], [0, 1], 2) is None


def test_solve_linear_system_random_consistency():
    rng = SplitMix64(44)
    for _ in range(60):
        n = 2 + rng.below(8)
        planted = [rng.below(2) for _ in range(n)]
        rows, rhs = [], []
        for _ in range(rng.below(12)):
            row = rng.below(1 << n)
            rows.append(row)
            rhs.append(bin(row & sum(b << i for i, b in enumerate(planted))).count("1") % 2)
        sol = solve_linear_system(rows, rhs, n)
        assert sol is not None
        for row, b in zip(rows, rhs):
            acc = 0
            for i in range(n):
                if row >> i & 1:
                    acc ^= sol[i]
            assert acc == b


def test_poly_str_canonical():
    p = bool_poly([{1, 0}, set()])
    assert str(p) == "1 + y[0,1]*y[1,1]"
    assert str(Gf2Poly.zero()) == "0"
