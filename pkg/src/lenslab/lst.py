"""Layered solid tori as symbolic paths, plus their face-pairing realisation.

A layered solid torus starts from the one-triangle Moebius band, whose
boundary torus has slot triple (1, 1, 2): slots 0 and 1 both name the
Moebius centre edge (the thick edge) and slot 2 its boundary edge.  Every
further tetrahedron is layered on one slot, replacing the edge there.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .errors import DomainError
from .slope import LVertex, SlopeTriple, canonical_fraction, lgraph_neighbors, push_through
from .tri import Triangulation, drop_redundant_pins, edge_index

__all__ = [
    "BASE",
    "EdgeRecord",
    "LayeredPath",
    "Materialized",
    "build_minimal",
    "build_from_path",
    "layer",
    "edge_table",
    "is_nearly_minimal",
    "open_at_thick_edge",
    "materialize",
    "materialize_labeled",
    "edge_line",
]

BASE = SlopeTriple((1, 1, 2), 2)
THICK = (0, 0)
MOEBIUS_BOUNDARY = (0, 2)


@dataclass(frozen=True)
class EdgeRecord:
    id: tuple[int, int]
    level_created: int
    meridian_count: int
    kind: str
    univalent: bool
    final_slope: SlopeTriple
    boundary_slots: tuple[int, ...]

    @property
    def in_boundary(self) -> bool:
        return bool(self.boundary_slots)


_SLOTS = frozenset((0, 1, 2))


@dataclass(frozen=True)
class LayeredPath:
    moves: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        moves = tuple(map(int, self.moves))
        object.__setattr__(self, "moves", moves)
        if not _SLOTS.issuperset(moves):
            raise ValueError("moves must be slots 0, 1 or 2")

    @classmethod
    def from_moves(cls, moves) -> "LayeredPath":
        return cls(tuple(moves))

    @cached_property
    def levels(self) -> tuple[SlopeTriple, ...]:
        """Meridian triple after each layering, starting from the Moebius band."""
        levels = [BASE]
        for m in self.moves:
            levels.append(push_through(levels[-1], m))
        return tuple(levels)

    @property
    def tet_count(self) -> int:
        return len(self.moves)

    @property
    def meridian(self) -> SlopeTriple:
        return self.levels[-1]

    @property
    def fraction(self) -> LVertex:
        return canonical_fraction(self.levels[-1])

    @property
    def creased(self) -> bool:
        return bool(self.moves) and self.moves[0] == 2

    @property
    def degenerate(self) -> bool:
        """Moebius band alone, or a lone creased 3-cell."""
        return not self.moves or (self.creased and len(self.moves) == 1)

    def fractions(self) -> list[LVertex]:
        """Per-level fractions, from the final level down to the base."""
        return [canonical_fraction(t) for t in reversed(self.levels)]

    @cached_property
    def edges(self) -> tuple[EdgeRecord, ...]:
        return tuple(_edge_records(self))

    def edge(self, eid: tuple[int, int]) -> EdgeRecord:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def slot_edges(self) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]]:
        owner = [THICK, THICK, MOEBIUS_BOUNDARY]
        for level, k in enumerate(self.moves, start=1):
            owner[k] = (level, k)
        return tuple(owner)  # type: ignore[return-value]

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.fractions())


def _edge_records(lp: LayeredPath) -> list[EdgeRecord]:
    owner = [THICK, THICK, MOEBIUS_BOUNDARY]
    counts = {THICK: 1, MOEBIUS_BOUNDARY: 2}
    created = {THICK: 0, MOEBIUS_BOUNDARY: 0}
    covered: dict[tuple[int, int], tuple[int, int]] = {}
    order = [THICK, MOEBIUS_BOUNDARY]
    for level, k in enumerate(lp.moves):
        old = owner[k]
        new = (level + 1, k)
        owner[k] = new
        if old not in owner:
            covered[old] = (level, k)
        counts[new] = lp.levels[level + 1][k]
        created[new] = level + 1
        order.append(new)
    last = order[-1] if lp.moves else MOEBIUS_BOUNDARY
    out = []
    for eid in order:
        slots = tuple(s for s in range(3) if owner[s] == eid)
        if eid in covered:
            level, k = covered[eid]
            entries = [1, 1, 1]
            entries[k] = 0
            slope = SlopeTriple(tuple(entries))
            for m in lp.moves[level:]:
                slope = push_through(slope, m)
        else:
            entries = [1, 1, 1]
            entries[slots[0]] = 0
            slope = SlopeTriple(tuple(entries))
        out.append(
            EdgeRecord(
                id=eid,
                level_created=created[eid],
                meridian_count=counts[eid],
                kind="thick" if eid == THICK else "thin",
                univalent=eid == last,
                final_slope=slope,
                boundary_slots=slots,
            )
        )
    return out


def edge_table(lp: LayeredPath) -> list[EdgeRecord]:
    return list(lp.edges)


def edge_line(e: EdgeRecord) -> str:
    return (
        f"edge {e.id[0]}.{e.id[1]} meridian={e.meridian_count} kind={e.kind} "
        f"univalent={int(e.univalent)} slope={e.final_slope}"
    )


def layer(lp: LayeredPath, slot: int) -> LayeredPath:
    if slot not in (0, 1, 2):
        raise ValueError("slot must be 0, 1 or 2")
    out = LayeredPath(lp.moves + (slot,))
    out.__dict__["levels"] = lp.levels + (push_through(lp.levels[-1], slot),)
    return out


_OTHERS = ((1, 2), (0, 2), (0, 1))


def _along(verts: list[tuple[int, int]]) -> LayeredPath:
    """Layer outward along an L-graph walk, taking the first slot that fits.

    Integer form of push_through, since this runs once per level of every
    layering built; the triples themselves are made on demand.
    """
    moves = []
    e = BASE.entries
    for p, q in reversed(verts[:-1]):
        for k in range(3):
            j, l = _OTHERS[k]
            a, b = e[j], e[l]
            if e[k] == a + b:
                new = abs(a - b)
                x, y = (b, new) if a >= b else (a, new)
            else:
                new, x, y = a + b, a, b
            # entries of a primitive triple are pairwise coprime, so no reduction
            if (x == p and y == q) or (y == p and x == q):
                break
        else:
            raise DomainError(f"{p}/{q} is not adjacent to the current level in the L-graph")
        e = (new, e[1], e[2]) if k == 0 else (e[0], new, e[2]) if k == 1 else (e[0], e[1], new)
        moves.append(k)
    return LayeredPath(tuple(moves))


def build_from_path(path) -> LayeredPath:
    """Path runs from the final fraction down to 1/1, as in an L-graph walk."""
    verts = [v if isinstance(v, LVertex) else LVertex.parse(str(v)) for v in path]
    if not verts or verts[-1] != LVertex(1, 1):
        raise DomainError("a layering path must end at 1/1")
    for a, b in zip(verts, verts[1:]):
        if b not in lgraph_neighbors(a):
            raise DomainError(f"{a} and {b} are not adjacent in the L-graph")
    return _along([(v.p, v.q) for v in verts])


def build_minimal(p: int, q: int) -> LayeredPath:
    if q < 1 or not 0 <= p <= q or gcd(p, q) != 1:
        raise DomainError(f"{p}/{q} must satisfy 0 <= p <= q, q >= 1 and gcd(p, q) = 1")
    # minimal path by repeated subtraction, as (p, q) pairs
    verts = [(p, q)] if (p, q) != (0, 1) else [(0, 1), (1, 1)]
    while verts[-1] != (1, 1):
        a, b = verts[-1]
        verts.append((a, b - a) if 2 * a <= b else (b - a, a))
    return _along(verts)


def open_at_thick_edge(k: int, n: int) -> LayeredPath:
    """Minimal 1/n path opened at 1/k: layer on the 1 and straight back.

    Needs 2 <= k < n.  The count-1 edge created on the way back is thin,
    so the result is a non-minimal 1/n layered solid torus with n + 1
    tetrahedra.
    """
    if not 2 <= k < n:
        raise DomainError(f"opening at 1/{k} needs 2 <= k < n, got n = {n}")
    lp = build_minimal(1, k)
    one = lp.meridian.entries.index(1)
    lp = layer(layer(lp, one), one)
    for _ in range(n - k):
        m = lp.meridian
        lp = layer(lp, next(i for i in range(3) if m[i] != 1 and not m.is_sum(i)))
    return lp


def is_nearly_minimal(lp: LayeredPath):
    """(verdict, witness): witness is an offending edge, a pair of edges, or None."""
    merid = lp.meridian
    for e in lp.edges:
        if e.final_slope == merid:
            return False, (e,)
    thin = [e for e in lp.edges if e.kind == "thin"]
    for a in range(len(thin)):
        for b in range(a + 1, len(thin)):
            if thin[a].final_slope == thin[b].final_slope:
                return False, (thin[a], thin[b])
    return True, None


# face-pairing realisation -----------------------------------------------------

# Corners of the two sides of the Moebius triangle (labels m0, m1, m2 with
# m0m1 glued to m1m2).  Slot s is the edge opposite corner s.
_MOEBIUS_F = (2, 0, 1)
_MOEBIUS_G = (0, 2, 1)


@dataclass(frozen=True)
class BoundaryFace:
    tet: int
    corners: tuple[int, int, int]  # slot -> tetrahedron vertex opposite that slot's edge

    @property
    def face(self) -> int:
        return next(v for v in range(4) if v not in self.corners)

    def slot_edge(self, s: int) -> tuple[int, int]:
        a, b = (self.corners[m] for m in range(3) if m != s)
        return (a, b)


@dataclass(frozen=True)
class Materialized:
    """A realised layered solid torus with its slot bookkeeping.

    The boundary faces F and G satisfy: along slot s, corner a of F is
    glued to corner b of G where {a, b, s} = {0, 1, 2}.
    """

    path: LayeredPath
    tri: Triangulation
    F: BoundaryFace
    G: BoundaryFace
    edge_reps: dict

    @property
    def slot_classes(self) -> tuple[int, int, int]:
        sk = self.tri.skeleton()
        out = []
        for s in range(3):
            a, b = self.F.slot_edge(s)
            out.append(sk.edge_of[self.F.tet][edge_index(a, b)][0])
        return tuple(out)  # type: ignore[return-value]

    def edge_class(self, eid: tuple[int, int]) -> int:
        t, a, b = self.edge_reps[eid]
        return self.tri.skeleton().edge_of[t][edge_index(a, b)][0]


def _first_layer(k: int):
    i, j = (m for m in range(3) if m != k)
    # tetrahedron vertex -> Moebius label, for face 3 (on F) and face 2 (on G)
    on_f = {0: _MOEBIUS_F[i], 1: _MOEBIUS_F[j], 2: _MOEBIUS_F[k]}
    on_g = {0: _MOEBIUS_G[j], 1: _MOEBIUS_G[i], 3: _MOEBIUS_G[k]}
    label_to_g = {lab: v for v, lab in on_g.items()}
    perm = [0] * 4
    for v, lab in on_f.items():
        perm[v] = label_to_g[lab]
    perm[3] = 2
    label_to_f = {lab: v for v, lab in on_f.items()}
    pin = ((0, label_to_f[0], label_to_f[1]), (0, label_to_f[1], label_to_f[2]))
    thick = (0, label_to_f[0], label_to_f[1])
    mbound = (0, label_to_f[2], label_to_f[0])
    return tuple(perm), pin, thick, mbound


def _next_faces(n: int, k: int, a: int, b: int) -> tuple[BoundaryFace, BoundaryFace]:
    cf = [0, 0, 0]
    cf[k], cf[a], cf[b] = 1, 3, 2
    cg = [0, 0, 0]
    cg[k], cg[a], cg[b] = 0, 2, 3
    return BoundaryFace(n, tuple(cf)), BoundaryFace(n, tuple(cg))


def materialize_labeled(lp: LayeredPath) -> Materialized:
    if not lp.moves:
        raise DomainError("the Moebius band alone has no tetrahedra to materialise")
    k0 = lp.moves[0]
    perm, pin, thick, mbound = _first_layer(k0)
    glues = [(0, 3, 0, perm)]
    pins = [pin]
    i, j = (m for m in range(3) if m != k0)
    F, G = _next_faces(0, k0, i, j)
    reps = {THICK: thick, MOEBIUS_BOUNDARY: mbound, (1, k0): (0, 2, 3)}
    for level, k in enumerate(lp.moves[1:], start=1):
        n = level
        i, j = (m for m in range(3) if m != k)
        pf = [0] * 4
        pf[0], pf[1], pf[2], pf[3] = F.corners[i], F.corners[j], F.corners[k], F.face
        pg = [0] * 4
        pg[0], pg[1], pg[3], pg[2] = G.corners[j], G.corners[i], G.corners[k], G.face
        glues.append((n, 3, F.tet, tuple(pf)))
        glues.append((n, 2, G.tet, tuple(pg)))
        F, G = _next_faces(n, k, i, j)
        reps[(level + 1, k)] = (n, 2, 3)
    T = drop_redundant_pins(Triangulation.from_gluings(len(lp.moves), glues, pins))
    return Materialized(lp, T, F, G, reps)


def materialize(lp: LayeredPath) -> Triangulation:
    return materialize_labeled(lp).tri
