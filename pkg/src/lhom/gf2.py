"""Multilinear GF(2) polynomials on choice variables.

A variable is a (vertex, color) pair; on a choice assignment exactly one
color variable per vertex is 1.  A monomial is a frozenset of variables, a
polynomial the frozenset of monomials with coefficient 1.  Rows packed into
ints drive the elimination routines.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import CertificationError

Var = tuple[int, int]
Monomial = frozenset


def monomial(pairs: Iterable[Var]) -> Monomial:
    return frozenset(pairs)


@dataclass(frozen=True)
class Gf2Poly:
    monomials: frozenset

    @classmethod
    def zero(cls) -> "Gf2Poly":
        return cls(frozenset())

    @classmethod
    def one(cls) -> "Gf2Poly":
        return cls(frozenset({frozenset()}))

    @classmethod
    def variable(cls, v: int, c: int) -> "Gf2Poly":
        return cls(frozenset({frozenset({(v, c)})}))

    @classmethod
    def product_of_vars(cls, pairs: Iterable[Var]) -> "Gf2Poly":
        return cls(frozenset({frozenset(pairs)}))

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.monomials ^ other.monomials)

    @classmethod
    def sum_of(cls, polys: Iterable["Gf2Poly"]) -> "Gf2Poly":
        acc: set = set()
        for p in polys:
            acc ^= p.monomials
        return cls(frozenset(acc))

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        acc: set = set()
        for m1 in self.monomials:
            for m2 in other.monomials:
                m = m1 | m2
                if m in acc:
                    acc.discard(m)
                else:
                    acc.add(m)
        return Gf2Poly(frozenset(acc))

    def __bool__(self) -> bool:
        return bool(self.monomials)

    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)

    def vertices(self) -> set[int]:
        return {v for m in self.monomials for v, _ in m}

    def remap_vertices(self, mapping: Mapping[int, int]) -> "Gf2Poly":
        return Gf2Poly(frozenset(
            frozenset((mapping[v], c) for v, c in m) for m in self.monomials))

    def eval(self, colors: Mapping[int, int]) -> int:
        """Value on the choice assignment coloring each vertex as given."""
        acc = 0
        for m in self.monomials:
            for v, c in m:
                if v not in colors:
                    raise ValueError(f"variable for vertex {v} is unassigned")
                if colors[v] != c:
                    break
            else:
                acc ^= 1
        return acc

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        keys = sorted(((len(m), sorted(m)) for m in self.monomials))
        terms = []
        for _, pairs in keys:
            if not pairs:
                terms.append("1")
            else:
                terms.append("*".join(f"y[{v},{c}]" for v, c in pairs))
        return " + ".join(terms)


_POLY_LOCAL_VERIFIED: set[tuple[int, int, int]] = set()


def _poly_local_raw(colors: Sequence[int], verts: Sequence[int]) -> Gf2Poly:
    acc = Gf2Poly.one()
    for c in colors:
        acc = acc * Gf2Poly(frozenset(
            frozenset({(v, c)}) for v in verts))
    return acc


def poly_local(colors: Iterable[int], verts: Sequence[int], h: int) -> Gf2Poly:
    """Degree-|S| polynomial that is 1 iff each color of S is used once.

    Built as the product over s in S of the parity of s-occurrences among
    the r = |S| + 1 vertices.  All counts odd on r slots forces all counts
    equal to one, which is why r must exceed |S| by exactly one.  The
    contract is verified exhaustively once per (|S|, r, h) signature before
    a polynomial is handed out.
    """
    s = sorted(set(colors))
    verts = tuple(verts)
    if len(set(verts)) != len(verts):
        raise ValueError("vertices must be distinct")
    if len(verts) != len(s) + 1:
        raise ValueError("vertex count must be |S| + 1")
    if any(c < 0 or c >= h for c in s):
        raise ValueError("color out of range")
    _verify_poly_local_signature(len(s), len(verts), h)
    return _poly_local_raw(s, verts)


def _verify_poly_local_signature(size: int, r: int, h: int) -> None:
    sig = (size, r, h)
    if sig in _POLY_LOCAL_VERIFIED:
        return
    colors = list(range(size))
    verts = list(range(r))
    poly = _poly_local_raw(colors, verts)
    for assignment in itertools.product(range(h), repeat=r):
        want = int(all(assignment.count(c) == 1 for c in colors))
        got = poly.eval(dict(zip(verts, assignment)))
        if got != want:
            raise CertificationError(
                f"exactly-once building block broken for |S|={size}, r={r}, "
                f"h={h} at assignment {assignment}: got {got}, want {want}")
    _POLY_LOCAL_VERIFIED.add(sig)


def extract_basis(polys: Sequence[Gf2Poly], m: int, d: int) -> list[int]:
    """Indices of a streaming GF(2) row basis of the given polynomials.

    Columns are monomials of degree at most d over m variables; a
    polynomial is kept iff it is independent of the kept prefix, so earlier
    indices are always preferred.  The selection size can never exceed the
    dimension sum_{i<=d} C(m, i).
    """
    col_index: dict = {}
    pivots: dict[int, int] = {}
    kept: list[int] = []
    for idx, poly in enumerate(polys):
        if poly.degree() > d:
            raise ValueError(f"polynomial {idx} exceeds degree bound {d}")
        row = 0
        for mono in poly.monomials:
            pos = col_index.setdefault(mono, len(col_index))
            row |= 1 << pos
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                break
            row ^= pivots[top]
        if row:
            pivots[row.bit_length() - 1] = row
            kept.append(idx)
    bound = sum(math.comb(m, i) for i in range(d + 1))
    if len(kept) > bound:
        raise AssertionError("basis exceeded the degree-d dimension bound")
    return kept


def solve_linear_system(rows: Sequence[int], rhs: Sequence[int],
                        n_cols: int) -> list[int] | None:
    """One solution of the GF(2) system, or None when inconsistent.

    Rows are column bit masks; free variables are set to 0.
    """
    if len(rows) != len(rhs):
        raise ValueError("row/rhs length mismatch")
    work = [(row, int(b) & 1) for row, b in zip(rows, rhs)]
    pivots: dict[int, tuple[int, int]] = {}
    for row, b in work:
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                break
            prow, pb = pivots[top]
            row ^= prow
            b ^= pb
        if row:
            pivots[row.bit_length() - 1] = (row, b)
        elif b:
            return None
    solution = [0] * n_cols
    # each stored row's pivot is its top bit, so ascending order finalizes
    # every lower column (free or pivot) before it is read
    for col in sorted(pivots):
        row, b = pivots[col]
        acc = b
        rest = row & ~(1 << col)
        while rest:
            low = rest & -rest
            rest ^= low
            acc ^= solution[low.bit_length() - 1]
        solution[col] = acc
    return solution
