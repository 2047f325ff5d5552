"""Decision procedures for subgroups of F.

Three questions about H = <X>: does H surject onto the abelianization Z^2,
does H contain the derived subgroup [F,F], and does H equal F.  The middle
question is decided by combining the core criterion for Cl(H) >= [F,F] with
the slope lattice S_H: the set of pairs (a, b) such that some h in H fixes
a dyadic point with slope 2^a on its left and 2^b on its right.  H >= [F,F]
iff Cl(H) >= [F,F] and S_H = Z^2.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .elements import Element, abelianization, invert
from .core import (CoreAutomaton, build_core, build_semicore,
                   contains_derived_in_closure, trace)


@dataclass(frozen=True)
class Tuple:
    """Slope data of one pair of consecutive branches: (a, b) with a chain
    of equivalence classes src -> dst (classes = semi-core edges)."""

    a: int
    b: int
    src: str
    dst: str

    def inverse(self) -> "Tuple":
        return Tuple(-self.a, -self.b, self.dst, self.src)

    def __add__(self, other: "Tuple") -> "Tuple":
        if self.dst != other.src:
            raise ValueError("tuples do not chain")
        return Tuple(self.a + other.a, self.b + other.b, self.src, other.dst)


def _xgcd(p: int, q: int) -> tuple[int, int, int]:
    # returns (g, s, t) with s*p + t*q = g >= 0
    s0, s1, t0, t1 = 1, 0, 0, 1
    while q:
        d, r = divmod(p, q)
        p, q = q, r
        s0, s1 = s1, s0 - d * s1
        t0, t1 = t1, t0 - d * t1
    if p < 0:
        p, s0, t0 = -p, -s0, -t0
    return p, s0, t0


@dataclass(frozen=True)
class Lattice2:
    """A sublattice of Z^2 given by generators, held in Hermite normal form:
    basis [(a, b), (0, c)] with a, c >= 0 and 0 <= b < c when both rows are
    present."""

    generators: tuple[tuple[int, int], ...]
    basis: tuple[tuple[int, int], ...]

    @staticmethod
    def span(vectors) -> "Lattice2":
        a = b = c = 0
        for x, y in vectors:
            if x == 0:
                c = math.gcd(c, abs(y))
            elif a == 0:
                a, b = abs(x), (y if x > 0 else -y)
            else:
                g, s, t = _xgcd(a, x)
                c = math.gcd(c, abs((a * y - x * b) // g))
                a, b = g, s * b + t * y
        if c:
            b %= c
        rows = [r for r in ((a, b), (0, c)) if r != (0, 0)]
        return Lattice2(tuple((x, y) for x, y in vectors), tuple(rows))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def full(self) -> bool:
        return self.basis == ((1, 0), (0, 1))

    def contains(self, v: tuple[int, int]) -> bool:
        x, y = v
        for bx, by in self.basis:
            if bx and x % bx == 0:
                y -= (x // bx) * by
                x = 0
            elif bx == 0 and x == 0 and by and y % by == 0:
                y = 0
        return (x, y) == (0, 0)


def abelianization_full(generators: list[Element]) -> bool:
    """Whether the images of the generators in the endpoint-slope
    abelianization generate all of Z^2 (equivalently H[F,F] = F)."""
    return Lattice2.span([abelianization(g) for g in generators]).full


def _split_pair(u1: str, u2: str) -> tuple[str, int, int]:
    # consecutive prefix-code words: u1 = u 0 1^m, u2 = u 1 0^n
    k = 0
    while k < min(len(u1), len(u2)) and u1[k] == u2[k]:
        k += 1
    u = u1[:k]
    m, n = u1[k + 1:], u2[k + 1:]
    assert u1[k] == "0" and u2[k] == "1"
    assert set(m) <= {"1"} and set(n) <= {"0"}
    return u, len(m), len(n)


def tuples_from_element(semicore: CoreAutomaton, a: Element) -> list[Tuple]:
    """The slope tuples of the consecutive branch pairs of a reduced element
    accepted by the semi-core."""
    out = []
    for (u1, v1), (u2, v2) in zip(a.pairs, a.pairs[1:]):
        u, m1, n1 = _split_pair(u1, u2)
        v, m2, n2 = _split_pair(v1, v2)
        src, dst = trace(semicore, u), trace(semicore, v)
        if src is None or dst is None:
            raise ValueError("branch prefix does not trace on the semi-core")
        out.append(Tuple(m1 - m2, n1 - n2, src, dst))
    return out


def slope_lattice(generators: list[Element],
                  semicore: CoreAutomaton | None = None) -> Lattice2:
    """The slope lattice S_H as a sublattice of Z^2.

    Requires Cl(H) >= [F,F].  Harvests all spherical tuples expressible as
    chains of at most N generator/inverse/zero tuples, N the number of
    semi-core edges; their (a, b) vectors generate S_H.
    """
    if not contains_derived_in_closure(build_core(generators)):
        raise ValueError("closure of the subgroup does not contain [F,F]")
    if semicore is None:
        semicore = build_semicore(generators)
    base = semicore.distinguished
    y: list[Tuple] = []
    for g in generators:
        y += tuples_from_element(semicore, g)
        y += tuples_from_element(semicore, invert(g))
    y += [Tuple(0, 0, e, e) for e in semicore.edges]
    by_src: dict[str, list[Tuple]] = {}
    for t in y:
        by_src.setdefault(t.src, []).append(t)
    n = len(semicore.edges)
    cap = n * max([max(abs(t.a), abs(t.b)) for t in y] + [1])
    vectors: set[tuple[int, int]] = set()
    frontier = {(base, 0, 0)}
    seen = set(frontier)
    for _ in range(n):
        nxt = set()
        for cls, a, b in frontier:
            for t in by_src.get(cls, ()):
                st = (t.dst, a + t.a, b + t.b)
                if abs(st[1]) > cap or abs(st[2]) > cap or st in seen:
                    continue
                seen.add(st)
                nxt.add(st)
                if st[0] == base:
                    vectors.add((st[1], st[2]))
        frontier = nxt
    return Lattice2.span(sorted(vectors))


@dataclass(frozen=True)
class Verdict:
    closure_contains_derived: bool
    abelianization_full: bool
    slope_lattice: Lattice2 | None  # None when the S_H precondition fails
    contains_derived: bool
    equals_F: bool

    def to_json_dict(self) -> dict:
        lat = None
        if self.slope_lattice is not None:
            lat = {"basis": [list(v) for v in self.slope_lattice.basis],
                   "full": self.slope_lattice.full}
        return {
            "closure_contains_derived": self.closure_contains_derived,
            "abelianization_full": self.abelianization_full,
            "slope_lattice": lat,
            "contains_derived": self.contains_derived,
            "equals_F": self.equals_F,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def generates_F(generators: list[Element]) -> Verdict:
    """Full verdict: H >= [F,F] iff Cl(H) >= [F,F] and S_H = Z^2; H = F iff
    additionally the abelianization image is all of Z^2."""
    cond1 = contains_derived_in_closure(build_core(generators))
    lattice = slope_lattice(generators) if cond1 else None
    derived = cond1 and lattice.full
    ab = abelianization_full(generators)
    return Verdict(cond1, ab, lattice, derived, derived and ab)


def contains_derived(generators: list[Element]) -> bool:
    """Whether the subgroup generated contains the derived subgroup [F,F]."""
    return generates_F(generators).contains_derived
