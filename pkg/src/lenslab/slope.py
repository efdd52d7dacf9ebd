"""Slope triples on a one-vertex torus and the L-graph of boundary classes.

A one-vertex triangulation of the torus has three edges.  A normal curve
on it is recorded by its intersection numbers with those edges, and one
of the three numbers is always the sum of the other two.  Layering a
tetrahedron on the edge in slot ``i`` flips that edge, which rewrites
only entry ``i`` of every triple (sum <-> difference of the other two).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd

from .errors import ParseError

__all__ = [
    "SlopeTriple",
    "LVertex",
    "canonical_fraction",
    "push_through",
    "lgraph_neighbors",
    "lgraph_minimal_path",
    "continued_fraction",
    "same_unordered",
]


def _sum_positions(entries: tuple[int, int, int]) -> list[int]:
    out = []
    for k in range(3):
        i, j = (m for m in range(3) if m != k)
        if entries[k] == entries[i] + entries[j]:
            out.append(k)
    return out


@dataclass(frozen=True)
class SlopeTriple:
    """Ordered intersection numbers with boundary-edge slots 0, 1, 2.

    Equality and hashing use ``entries`` only; ``sum_index`` is bookkeeping
    for the degenerate triples where two positions satisfy the sum rule.
    """

    entries: tuple[int, int, int]
    sum_index: int = field(default=-1, compare=False)

    def __post_init__(self) -> None:
        e = tuple(int(x) for x in self.entries)
        if len(e) != 3 or any(x < 0 for x in e):
            raise ValueError(f"a slope triple needs three nonnegative entries, got {self.entries!r}")
        object.__setattr__(self, "entries", e)
        sums = _sum_positions(e)
        if not sums:
            raise ValueError(f"no entry of {e} is the sum of the other two")
        if self.sum_index == -1:
            object.__setattr__(self, "sum_index", sums[0])
        elif self.sum_index not in sums:
            raise ValueError(f"entry {self.sum_index} of {e} is not the sum of the other two")

    @classmethod
    def _trusted(cls, entries: tuple[int, int, int], sum_index: int) -> "SlopeTriple":
        # skips validation; callers guarantee a valid triple
        t = object.__new__(cls)
        object.__setattr__(t, "entries", entries)
        object.__setattr__(t, "sum_index", sum_index)
        return t

    @classmethod
    def of(cls, a: int, b: int, c: int, sum_index: int = -1) -> "SlopeTriple":
        return cls((a, b, c), sum_index)

    @classmethod
    def slope(cls, a: int, b: int, c: int, sum_index: int = -1) -> "SlopeTriple":
        """Construct a triple that represents an actual slope (coprime legs)."""
        t = cls((a, b, c), sum_index)
        x, y = t.legs
        if gcd(x, y) != 1:
            raise ValueError(f"{t} is not a slope: gcd of {x} and {y} is not 1")
        return t

    @classmethod
    def parse(cls, text: str) -> "SlopeTriple":
        m = re.fullmatch(r"\s*[{(]?\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*[})]?\s*", text)
        if not m:
            raise ParseError(f"cannot read a triple from {text!r}")
        try:
            return cls(tuple(int(g) for g in m.groups()))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    @property
    def legs(self) -> tuple[int, int]:
        """The two non-sum entries, smaller first."""
        i, j = (m for m in range(3) if m != self.sum_index)
        a, b = self.entries[i], self.entries[j]
        return (a, b) if a <= b else (b, a)

    def is_sum(self, i: int) -> bool:
        j, k = (m for m in range(3) if m != i)
        return self.entries[i] == self.entries[j] + self.entries[k]

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return "{%d,%d,%d}" % self.entries

    def __repr__(self) -> str:
        return f"SlopeTriple({self.entries}, sum_index={self.sum_index})"


@dataclass(frozen=True, order=True)
class LVertex:
    """A reduced fraction p/q with 0 <= p <= q, a vertex of the L-graph."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 1 or self.p < 0 or self.p > self.q:
            raise ValueError(f"{self.p}/{self.q} is not in the range 0 <= p <= q, q >= 1")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not reduced")

    @classmethod
    def _trusted(cls, p: int, q: int) -> "LVertex":
        v = object.__new__(cls)
        object.__setattr__(v, "p", p)
        object.__setattr__(v, "q", q)
        return v

    @classmethod
    def reduced(cls, a: int, b: int) -> "LVertex":
        """The vertex for the unordered pair {a, b}, reduced."""
        lo, hi = (a, b) if a <= b else (b, a)
        g = gcd(lo, hi)
        if g == 0:
            raise ValueError("0/0 is not a fraction")
        return cls(lo // g, hi // g)

    @classmethod
    def parse(cls, text: str) -> "LVertex":
        m = re.fullmatch(r"\s*(\d+)\s*/\s*(\d+)\s*", text)
        if not m:
            raise ParseError(f"cannot read a fraction from {text!r}")
        try:
            return cls(int(m.group(1)), int(m.group(2)))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


def canonical_fraction(t: SlopeTriple) -> LVertex:
    a, b = t.legs
    return LVertex.reduced(a, b)


_OTHERS = ((1, 2), (0, 2), (0, 1))


def push_through(t: SlopeTriple, i: int) -> SlopeTriple:
    if i not in (0, 1, 2):
        raise ValueError(f"slot must be 0, 1 or 2, got {i}")
    j, k = _OTHERS[i]
    a, b = t.entries[j], t.entries[k]
    e = list(t.entries)
    if t.entries[i] == a + b:
        e[i] = abs(a - b)
        s = j if a >= b else k
    else:
        e[i] = a + b
        s = i
    return SlopeTriple._trusted(tuple(e), s)


def same_unordered(s: SlopeTriple, t: SlopeTriple) -> bool:
    return sorted(s.entries) == sorted(t.entries)


def lgraph_neighbors(v: LVertex) -> list[LVertex]:
    p, q = v.p, v.q
    return [
        LVertex.reduced(p, p + q),
        LVertex.reduced(q, p + q),
        LVertex.reduced(p, q - p),
    ]


def lgraph_minimal_path(v: LVertex) -> list[LVertex]:
    """Shortest path from ``v`` to 1/1 by repeated subtraction."""
    path = [v]
    p, q = v.p, v.q
    if (p, q) == (0, 1):
        return [v, LVertex(1, 1)]
    while (p, q) != (1, 1):
        p, q = min(p, q - p), max(p, q - p)
        path.append(LVertex._trusted(p, q))
    return path


def continued_fraction(p: int, q: int) -> list[int]:
    """Partial quotients of p/q, last quotient >= 2 unless p/q is an integer."""
    if q <= 0:
        raise ValueError("denominator must be positive")
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out
