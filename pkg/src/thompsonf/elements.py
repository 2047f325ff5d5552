"""Elements of Thompson's group F as reduced branch-pair diagrams.

An element is an ordered list of branch pairs ``u -> v`` of finite binary
words: the element maps the dyadic interval [u] linearly onto [v].  The
domain words (and the range words) are the leaves, left to right, of a
finite binary tree, so each side is a complete prefix code.  The list is
kept reduced: no adjacent pair of the shape ``w0 -> v0, w1 -> v1``.

All arithmetic is exact.  Dyadic and rational numbers are represented by
``fractions.Fraction``; a dyadic in (0,1) corresponds to the unique binary
word ending in 1 via ``.u <-> u``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class ParseError(ValueError):
    """Raised for malformed element text or invalid branch-pair lists."""


# ---------------------------------------------------------------------------
# binary words and dyadic values
# ---------------------------------------------------------------------------

def is_binary_word(w: str) -> bool:
    return all(c in "01" for c in w)


def word_interval(u: str) -> tuple[Fraction, Fraction]:
    """Endpoints of the dyadic interval [u] inside [0,1]."""
    n = len(u)
    lo = Fraction(int(u, 2) if u else 0, 1 << n)
    return lo, lo + Fraction(1, 1 << n)


def word_value(u: str) -> Fraction:
    """The dyadic fraction .u (left endpoint of [u])."""
    return word_interval(u)[0]


def is_dyadic(x: Fraction) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


def dyadic_word(x: Fraction) -> str:
    """The canonical word (ending in 1) with .u = x, for dyadic x in (0,1)."""
    if not 0 < x < 1 or not is_dyadic(x):
        raise ValueError(f"not a dyadic fraction in (0,1): {x}")
    k = x.denominator.bit_length() - 1
    return format(x.numerator, "b").zfill(k)


# ---------------------------------------------------------------------------
# the Element type
# ---------------------------------------------------------------------------

def _check_code(words: list[str], side: str) -> None:
    # sorted prefix-free words covering total measure 1 <=> leaves of a tree
    total = Fraction(0)
    for i, w in enumerate(words):
        if not is_binary_word(w):
            raise ParseError(f"{side} word {w!r} is not binary")
        if i + 1 < len(words) and words[i + 1].startswith(w):
            raise ParseError(f"{side} words are not prefix-free: {w!r}")
        total += Fraction(1, 1 << len(w))
    if total != 1:
        raise ParseError(f"{side} words do not form a complete prefix code")


def _reduce(ps: list[tuple[str, str]]) -> list[tuple[str, str]]:
    i = 0
    while i + 1 < len(ps):
        (u1, v1), (u2, v2) = ps[i], ps[i + 1]
        if (u1 and u2 and v1 and v2
                and u1[-1] == "0" and u2[-1] == "1" and u1[:-1] == u2[:-1]
                and v1[-1] == "0" and v2[-1] == "1" and v1[:-1] == v2[:-1]):
            ps[i:i + 2] = [(u1[:-1], v1[:-1])]
            i = max(i - 1, 0)
        else:
            i += 1
    return ps


@dataclass(frozen=True)
class Element:
    """A reduced branch-pair diagram; immutable and hashable."""

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        ps = sorted(self.pairs)
        if not ps:
            raise ParseError("an element needs at least one branch pair")
        _check_code([u for u, _ in ps], "domain")
        rngs = [v for _, v in ps]
        _check_code(sorted(rngs), "range")
        if rngs != sorted(rngs):
            raise ParseError("range words do not preserve the interval order")
        object.__setattr__(self, "pairs", tuple(_reduce(ps)))

    def is_identity(self) -> bool:
        return self.pairs == (("", ""),)

    def text(self) -> str:
        """Canonical text form, branch pairs sorted by domain word."""
        return ",".join(f"{u}->{v}" for u, v in self.pairs)

    def __repr__(self):
        return f"Element({self.text()!r})"


IDENTITY = Element((("", ""),))


def invert(a: Element) -> Element:
    return Element(tuple((v, u) for u, v in a.pairs))


def multiply(a: Element, b: Element) -> Element:
    """The product a*b: a applied first (composition left to right)."""
    mids = sorted({v for _, v in a.pairs} | {u for u, _ in b.pairs})
    leaves = [w for i, w in enumerate(mids)
              if i + 1 == len(mids) or not mids[i + 1].startswith(w)]
    a_by_rng = sorted(a.pairs, key=lambda p: p[1])
    pairs = []
    for w in leaves:
        du = next(u for u, v in a_by_rng if w.startswith(v))
        rv = next(v for u, v in b.pairs if w.startswith(u))
        mu = next(v for u, v in a_by_rng if w.startswith(v))
        mv = next(u for u, v in b.pairs if w.startswith(u))
        pairs.append((du + w[len(mu):], rv + w[len(mv):]))
    return Element(tuple(pairs))


def power(a: Element, n: int) -> Element:
    if n < 0:
        return power(invert(a), -n)
    acc = IDENTITY
    for _ in range(n):
        acc = multiply(acc, a)
    return acc


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_X0 = Element((("00", "0"), ("01", "10"), ("1", "11")))
_X1 = Element((("0", "0"), ("100", "10"), ("101", "110"), ("11", "111")))

_LETTER = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")


@lru_cache(maxsize=None)
def generator(n: int) -> Element:
    """The generator x_n; x_{n} for n >= 2 abbreviates x0^{-(n-1)} x1 x0^{n-1}."""
    if n == 0:
        return _X0
    if n == 1:
        return _X1
    return multiply(multiply(power(_X0, -(n - 1)), _X1), power(_X0, n - 1))


def parse_element(text: str) -> Element:
    """Parse a group word ("x0 x1^-2") or a branch-pair list ("00->0,01->10,1->11")."""
    text = text.strip()
    if "->" in text:
        pairs = []
        for part in text.split(","):
            part = part.strip()
            if "->" not in part:
                raise ParseError(f"missing '->' in branch pair {part!r}")
            u, _, v = part.partition("->")
            pairs.append((u.strip(), v.strip()))
        return Element(tuple(pairs))
    acc = IDENTITY
    for tok in text.split():
        m = _LETTER.match(tok)
        if not m:
            raise ParseError(f"bad letter {tok!r}")
        n = int(m.group(1))
        e = int(m.group(2)) if m.group(2) else 1
        acc = multiply(acc, power(generator(n), e))
    return acc


# ---------------------------------------------------------------------------
# normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalForm:
    """x_{i1}^{s1}..x_{im}^{sm} (x_{j1}^{t1}..x_{jn}^{tn})^{-1}, exponents > 0.

    ``positive`` holds (index, exponent) with indices increasing; ``negative``
    holds the inverted letters in the order they appear in the word, so the
    indices are decreasing.
    """

    positive: tuple[tuple[int, int], ...]
    negative: tuple[tuple[int, int], ...]

    def render(self) -> str:
        toks = [f"x{i}" if s == 1 else f"x{i}^{s}" for i, s in self.positive]
        toks += [f"x{j}^{-t}" for j, t in self.negative]
        return " ".join(toks)


def _leaf_exponents(words: tuple[str, ...]) -> list[int]:
    # exponent of a leaf: longest run of left edges upward whose upper
    # endpoint is not on the right side (all-1s prefixes) of the tree
    out = []
    for w in words:
        m = 0
        v = w
        while v.endswith("0") and "0" in v[:-1]:
            m += 1
            v = v[:-1]
        out.append(m)
    return out


def normal_form(a: Element) -> NormalForm:
    doms = tuple(u for u, _ in a.pairs)
    rngs = tuple(v for _, v in a.pairs)
    pos = [(k, e) for k, e in enumerate(_leaf_exponents(doms)) if e]
    neg = [(k, e) for k, e in enumerate(_leaf_exponents(rngs)) if e]
    return NormalForm(tuple(pos), tuple(reversed(neg)))


# ---------------------------------------------------------------------------
# PL-map semantics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PLMap:
    """Breakpoints (x, y) including (0,0) and (1,1); slopes[i] = log2 of the
    slope on segment i, with consecutive slopes distinct."""

    breakpoints: tuple[tuple[Fraction, Fraction], ...]
    slopes: tuple[int, ...]


def to_pl_map(a: Element) -> PLMap:
    pts = [(Fraction(0), Fraction(0))]
    slopes: list[int] = []
    for u, v in a.pairs:
        k = len(u) - len(v)
        hi_u = word_interval(u)[1]
        hi_v = word_interval(v)[1]
        if slopes and slopes[-1] == k:
            pts[-1] = (hi_u, hi_v)
        else:
            slopes.append(k)
            pts.append((hi_u, hi_v))
    return PLMap(tuple(pts), tuple(slopes))


def evaluate(a: Element, t: Fraction) -> Fraction:
    if not 0 <= t <= 1:
        raise ValueError("argument outside [0,1]")
    for u, v in a.pairs:
        lo_u, hi_u = word_interval(u)
        if lo_u <= t <= hi_u:
            lo_v = word_interval(v)[0]
            return lo_v + (t - lo_u) * Fraction(2) ** (len(u) - len(v))
    raise AssertionError("branch pairs do not cover [0,1]")


def slope_at(a: Element, alpha: Fraction, side: str) -> int:
    """log2 of the one-sided slope of a at alpha (side 'left' or 'right')."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if side == "right" and not 0 <= alpha < 1:
        raise ValueError("right slope needs alpha in [0,1)")
    if side == "left" and not 0 < alpha <= 1:
        raise ValueError("left slope needs alpha in (0,1]")
    for u, v in a.pairs:
        lo, hi = word_interval(u)
        if (lo <= alpha < hi) if side == "right" else (lo < alpha <= hi):
            return len(u) - len(v)
    raise AssertionError("branch pairs do not cover [0,1]")


def abelianization(a: Element) -> tuple[int, int]:
    """(log2 a'(0+), log2 a'(1-)): the endpoint-slope basis of F/[F,F]."""
    (u0, v0), (u1, v1) = a.pairs[0], a.pairs[-1]
    return (len(u0) - len(v0), len(u1) - len(v1))


def _fixed_set(a: Element) -> list[tuple[Fraction, Fraction]]:
    # finite union of closed intervals (points are degenerate intervals)
    parts = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))]
    for u, v in a.pairs:
        lo_u, hi_u = word_interval(u)
        lo_v = word_interval(v)[0]
        s = Fraction(2) ** (len(u) - len(v))
        if s == 1:
            if lo_v == lo_u:
                parts.append((lo_u, hi_u))
        else:
            x = (lo_v - s * lo_u) / (1 - s)
            if lo_u <= x <= hi_u:
                parts.append((x, x))
    parts.sort()
    merged = [parts[0]]
    for lo, hi in parts[1:]:
        if lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(hi, merged[-1][1]))
        else:
            merged.append((lo, hi))
    return merged


def orbitals(a: Element) -> list[tuple[Fraction, Fraction, str]]:
    """Maximal open intervals with no interior fixed point, with direction
    'up' where a(x) > x and 'down' where a(x) < x."""
    fixed = _fixed_set(a)
    out = []
    for (_, hi1), (lo2, _) in zip(fixed, fixed[1:]):
        mid = (hi1 + lo2) / 2
        out.append((hi1, lo2, "up" if evaluate(a, mid) > mid else "down"))
    return out


def components_at(a: Element, alpha: Fraction) -> tuple[Element, Element]:
    """Split a at a fixed dyadic alpha in (0,1) into (f1, f2) with
    f1 = a on [0,alpha] / identity after, f2 the other way; a = f1*f2."""
    if not (0 < alpha < 1) or not is_dyadic(alpha):
        raise ValueError("alpha must be a dyadic fraction in (0,1)")
    if evaluate(a, alpha) != alpha:
        raise ValueError("alpha is not fixed by the element")
    pairs = list(a.pairs)
    while True:
        for i, (u, v) in enumerate(pairs):
            lo, hi = word_interval(u)
            if lo < alpha < hi:
                pairs[i:i + 1] = [(u + "0", v + "0"), (u + "1", v + "1")]
                break
        else:
            break
    left = [(u, v) if word_interval(u)[1] <= alpha else (u, u) for u, v in pairs]
    right = [(u, v) if word_interval(u)[0] >= alpha else (u, u) for u, v in pairs]
    return Element(tuple(left)), Element(tuple(right))
