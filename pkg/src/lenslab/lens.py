"""Lens spaces from folded and glued layered solid tori."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .errors import DomainError
from .lst import (
    LayeredPath,
    Materialized,
    BoundaryFace,
    THICK,
    build_minimal,
    materialize_labeled,
)
from .slope import LVertex, SlopeTriple, canonical_fraction, push_through
from .tri import (
    Triangulation,
    drop_redundant_pins,
    edge_index,
    face_vertices,
    glue_boundaries,
)

__all__ = [
    "LensSpace",
    "GluingSpec",
    "FoldedLens",
    "canonicalize",
    "equivalent",
    "fold_symbolic",
    "fold_triple",
    "identify_gluing",
    "build_lens",
    "reverse_description",
    "even_edge_count",
    "nonorientable_genus",
    "GenusReport",
    "is_zero_efficient",
    "is_one_efficient",
    "closed_complex",
    "glue_layered",
    "dehn_fill",
    "boundary_frame",
]


@dataclass(frozen=True)
class LensSpace:
    """L(X, Y) in canonical form; ``reading`` keeps the Y a computation produced."""

    X: int
    Y: int
    reading: Optional[int] = field(default=None, compare=False)

    @property
    def name(self) -> str:
        if self.X == 1:
            return "S^3"
        if self.X == 0:
            return "S^2 x S^1"
        if self.X == 2:
            return "RP^3"
        return f"L({self.X},{self.Y})"

    def raw(self) -> str:
        y = self.Y if self.reading is None else self.reading
        return f"L({self.X},{y})"

    def __str__(self) -> str:
        return f"L({self.X},{self.Y})"


def _inverse_mod(y: int, x: int) -> int:
    return pow(y, -1, x)


def canonicalize(X: int, Y: int, strict: bool = False) -> LensSpace:
    """Smallest representative of Y under Y -> -Y and Y -> 1/Y modulo X.

    ``strict`` drops the inversion and keeps only the sign change.
    """
    if X < 0:
        raise DomainError("X must be nonnegative")
    if X == 0:
        if abs(Y) != 1:
            raise DomainError(f"L(0,{Y}) requires Y = 1")
        return LensSpace(0, 1, Y)
    if X == 1:
        return LensSpace(1, 0, Y)
    y = Y % X
    if gcd(X, y) != 1:
        raise DomainError(f"gcd({X},{Y}) != 1")
    cands = {y, X - y}
    if not strict:
        inv = _inverse_mod(y, X)
        cands |= {inv, X - inv}
    return LensSpace(X, min(cands), Y)


def equivalent(a: LensSpace, b: LensSpace, strict: bool = False) -> bool:
    ya = a.Y if a.reading is None else a.reading
    yb = b.Y if b.reading is None else b.reading
    return canonicalize(a.X, ya, strict) == canonicalize(b.X, yb, strict)


# symbolic folding --------------------------------------------------------------


def fold_triple(t: SlopeTriple, slot: int) -> LensSpace:
    i, j = (m for m in range(3) if m != slot)
    u, v = t[i], t[j]
    X = abs(u - v) if t.is_sum(slot) else u + v
    if X == 0:
        return LensSpace(0, 1, u)
    return canonicalize(X, u % X if X else u)


def fold_symbolic(lp: LayeredPath, slot: int) -> LensSpace:
    if slot not in (0, 1, 2):
        raise ValueError("slot must be 0, 1 or 2")
    return fold_triple(lp.meridian, slot)


@dataclass(frozen=True)
class GluingSpec:
    """Two boundary triples with slot ``i`` of A glued to slot ``pairing[i]`` of B."""

    A: SlopeTriple
    B: SlopeTriple
    pairing: tuple[int, int, int] = (0, 1, 2)

    def __post_init__(self) -> None:
        if sorted(self.pairing) != [0, 1, 2]:
            raise ValueError(f"pairing {self.pairing} is not a permutation of 0, 1, 2")

    def swapped(self) -> "GluingSpec":
        inv = [0, 0, 0]
        for i, j in enumerate(self.pairing):
            inv[j] = i
        return GluingSpec(self.B, self.A, tuple(inv))


def _is_moebius(t: SlopeTriple) -> bool:
    return sorted(t.entries) == [1, 1, 2]


def _is_creased(t: SlopeTriple) -> bool:
    return sorted(t.entries) == [0, 1, 1]


def _read_terminal(term: SlopeTriple, other: SlopeTriple, pair) -> LensSpace:
    """``term`` is terminal; slot i of ``term`` meets slot pair[i] of ``other``."""
    if _is_moebius(term):
        two = term.entries.index(2)
        return fold_triple(other, pair[two])
    zero = term.entries.index(0)
    one = next(i for i in range(3) if i != zero)
    X = other[pair[zero]]
    if X == 0:
        raise DomainError("both sides are creased with their 0 edges glued together")
    Y = other[pair[one]]
    if X == 1:
        return canonicalize(1, 0)
    return canonicalize(X, Y % X)


def identify_gluing(g: GluingSpec, strategy: str = "larger") -> LensSpace:
    """Reduce one side until one of the two is the Moebius or creased base.

    ``strategy`` picks the side that gets reduced: ``"larger"`` takes the
    side with the larger entry sum, ``"first"`` always takes side A.
    """
    if strategy not in ("larger", "first"):
        raise ValueError(f"unknown strategy {strategy!r}")
    a, b, pair = g.A, g.B, tuple(g.pairing)
    if strategy == "larger" and sum(b.entries) > sum(a.entries):
        g = g.swapped()
        a, b, pair = g.A, g.B, tuple(g.pairing)
    inv = [0, 0, 0]
    for i, j in enumerate(pair):
        inv[j] = i
    inv = tuple(inv)
    while True:
        for test in (_is_moebius, _is_creased):
            for side, other, p in ((a, b, pair), (b, a, inv)):
                if test(side):
                    return _read_terminal(side, other, p)
        s = a.sum_index
        a, b = push_through(a, s), push_through(b, pair[s])
        if sum(a.entries) == 0:
            raise DomainError("gluing degenerates")


# descriptions --------------------------------------------------------------------


@dataclass(frozen=True)
class FoldedLens:
    """A layered solid torus with its boundary folded along ``fold_slot``."""

    path: LayeredPath
    fold_slot: int

    @property
    def lens(self) -> LensSpace:
        return fold_symbolic(self.path, self.fold_slot)

    @property
    def tet_count(self) -> int:
        return self.path.tet_count

    @property
    def folds_univalent(self) -> bool:
        """True when the folded slot holds the univalent edge."""
        owner = self.path.slot_edges()[self.fold_slot]
        return self.path.edge(owner).univalent

    def __str__(self) -> str:
        return f"{self.path} fold={self.fold_slot}"


# two-tetrahedron substitutes for the degenerate fractions
_ZERO_ONE = LayeredPath.from_moves((2, 0))
_ONE_ONE = LayeredPath.from_moves((0, 0))


def _layered_for(v: LVertex) -> LayeredPath:
    if (v.p, v.q) == (0, 1):
        return _ZERO_ONE
    if (v.p, v.q) == (1, 1):
        return _ONE_ONE
    return build_minimal(v.p, v.q)


def build_lens(X: int, Y: int) -> FoldedLens:
    if X < 0:
        raise DomainError("X must be nonnegative")
    if X == 0:
        if Y != 1:
            raise DomainError("S^2 x S^1 is L(0,1)")
        return FoldedLens(_ONE_ONE, _ONE_ONE.meridian.sum_index)
    if X == 1:
        lp = build_minimal(1, 2)
        return FoldedLens(lp, lp.meridian.entries.index(3))
    Y %= X
    if gcd(X, Y) != 1:
        raise DomainError(f"gcd({X},{Y}) != 1")
    if 2 * Y <= X:
        fold_value, other = X - 2 * Y, Y
    else:
        fold_value, other = 2 * Y - X, X - Y
    lp = _layered_for(LVertex.reduced(fold_value, other))
    m = lp.meridian
    if (fold_value, other) == (1, 1):
        # 1/1: fold the thick edge, giving the good triangulation
        slot = lp.slot_edges().index(THICK)
    else:
        slot = m.entries.index(fold_value)
    return FoldedLens(lp, slot)


def reverse_description(desc: FoldedLens) -> FoldedLens:
    """The same closed complex seen from the other side of the fold."""
    s = desc.fold_slot
    others = [m for m in range(3) if m != s]
    relabel = {s: 2, others[0]: 0, others[1]: 1}
    moves = tuple(relabel[m] for m in reversed(desc.path.moves))
    return FoldedLens(LayeredPath.from_moves(moves), relabel[2])


# nonorientable surfaces ----------------------------------------------------------


def even_edge_count(p: int, q: int) -> int:
    if p < 1 or q < 1 or gcd(p, q) != 1:
        raise DomainError(f"e({p},{q}) needs coprime positive arguments")
    total = 1
    a, b = p, q
    while (a, b) != (1, 1):
        if a % 2 and b % 2:
            total += 1
        a, b = abs(a - b), min(a, b)
    return total


@dataclass(frozen=True)
class GenusReport:
    X: int
    Y: int
    genus: Optional[int]
    note: str

    def __str__(self) -> str:
        if self.genus is None:
            return f"none ({self.note})"
        if self.note:
            return f"U_{self.genus} (h={self.genus}; {self.note})"
        return f"U_{self.genus} (h={self.genus})"


def nonorientable_genus(X: int, Y: int) -> GenusReport:
    L = canonicalize(X, Y)
    if X == 0:
        return GenusReport(0, 1, None, "no incompressible one; every even genus embeds")
    if X % 2:
        return GenusReport(L.X, L.Y, None, "X is odd")
    if X == 2:
        return GenusReport(2, 1, 1, "every odd genus embeds")
    return GenusReport(L.X, L.Y, even_edge_count(X, L.Y), "")


# efficiency --------------------------------------------------------------------


def _refuse_small(desc: FoldedLens) -> None:
    L = desc.lens
    if L.X == 1:
        raise DomainError("efficiency is not defined here for S^3")
    if L.X == 0:
        raise DomainError("efficiency is not defined here for S^2 x S^1")


def _meridian_edges(lp: LayeredPath):
    m = lp.meridian
    return [e for e in lp.edges if e.final_slope == m]


def is_zero_efficient(desc: FoldedLens) -> bool:
    _refuse_small(desc)
    for view in (desc, reverse_description(desc)):
        if _meridian_edges(view.path):
            return False
    return True


def _one_view_ok(view: FoldedLens) -> bool:
    lp = view.path
    if _meridian_edges(lp):
        return False
    owner = lp.slot_edges()
    folded_pair = {owner[k] for k in range(3) if k != view.fold_slot}
    thin = [e for e in lp.edges if e.id != THICK and e.id not in folded_pair]
    seen = set()
    for e in thin:
        if e.final_slope in seen:
            return False
        seen.add(e.final_slope)
    return True


def is_one_efficient(desc: FoldedLens) -> bool:
    _refuse_small(desc)
    return all(_one_view_ok(v) for v in (desc, reverse_description(desc)))


# realisation ---------------------------------------------------------------------


def _fold_faces(T: Triangulation, F: BoundaryFace, G: BoundaryFace, k: int, pins=()) -> Triangulation:
    i, j = (m for m in range(3) if m != k)
    p = [0] * 4
    p[F.corners[i]] = G.corners[j]
    p[F.corners[j]] = G.corners[i]
    p[F.corners[k]] = G.corners[k]
    p[F.face] = G.face
    return drop_redundant_pins(T.with_gluings(0, [(F.tet, F.face, G.tet, tuple(p))], pins))


def closed_complex(desc: FoldedLens) -> Triangulation:
    M = materialize_labeled(desc.path)
    return _fold_faces(M.tri, M.F, M.G, desc.fold_slot)


def _glue_frames(T: Triangulation, FT: BoundaryFace, GT: BoundaryFace, M: Materialized, pi, pinch: bool = False) -> Triangulation:
    corr = []
    for a, b in ((FT, M.F), (GT, M.G)):
        p = [0] * 4
        for s in range(3):
            p[a.corners[s]] = b.corners[pi[s]]
        p[a.face] = b.face
        corr.append(((a.tet, a.face), (b.tet, b.face), tuple(p)))
    return drop_redundant_pins(glue_boundaries(T, M.tri, corr, pinch=pinch))


def glue_layered(A: LayeredPath, B: LayeredPath, pairing=(0, 1, 2)) -> Triangulation:
    """Glue two layered solid tori, slot i of A onto slot pairing[i] of B."""
    MA, MB = materialize_labeled(A), materialize_labeled(B)
    return _glue_frames(MA.tri, MA.F, MA.G, MB, tuple(pairing))


def boundary_frame(T: Triangulation, component: int = 0):
    """Slot frame of a one-vertex torus boundary component.

    Slots are the component's three edge classes in increasing order.
    Returns (F, G, classes).
    """
    sk = T.skeleton()
    faces = list(sk.boundary_faces)
    # group boundary faces by shared edge classes
    comps: list[list[tuple[int, int]]] = []
    for tf in faces:
        cls = {sk.edge_of[tf[0]][edge_index(a, b)][0] for a, b in _pairs(tf[1])}
        for c in comps:
            if any(cls & c_cls for _, c_cls in c):
                c.append((tf, cls))
                break
        else:
            comps.append([(tf, cls)])
    if not 0 <= component < len(comps):
        raise DomainError(f"no boundary component {component}")
    comp = comps[component]
    if len(comp) != 2 or comp[0][1] != comp[1][1] or len(comp[0][1]) != 3:
        raise DomainError("boundary component is not a one-vertex two-triangle torus")
    classes = tuple(sorted(comp[0][1]))
    frames = []
    for (t, f), _ in comp:
        corners = [0, 0, 0]
        for s, c in enumerate(classes):
            a, b = next((a, b) for a, b in _pairs(f) if sk.edge_of[t][edge_index(a, b)][0] == c)
            corners[s] = next(v for v in face_vertices(f) if v not in (a, b))
        frames.append(BoundaryFace(t, tuple(corners)))
    F, G = frames
    # the two triangles must meet as a torus: along slot s, F corner a is G corner b
    for s in range(3):
        a, b = (m for m in range(3) if m != s)
        fa, fb = F.corners[a], F.corners[b]
        ga, gb = G.corners[a], G.corners[b]
        _, sF = sk.edge_of[F.tet][edge_index(fa, fb)]
        _, sG = sk.edge_of[G.tet][edge_index(ga, gb)]
        # along the class direction, F runs fa->fb when sF agrees with fa<fb
        f_dir = sF if fa < fb else -sF
        g_dir = sG if ga < gb else -sG
        if f_dir != -g_dir:
            raise DomainError("boundary component is not a torus in standard position")
    return F, G, classes


def _pairs(f: int):
    vs = face_vertices(f)
    return ((vs[0], vs[1]), (vs[0], vs[2]), (vs[1], vs[2]))


def dehn_fill(T: Triangulation, component: int, alpha: SlopeTriple) -> Triangulation:
    """Fill a one-vertex torus boundary along ``alpha``.

    ``alpha[s]`` is the intersection number with the boundary edge in
    slot s, slots being the component's edge classes in increasing order.
    """
    F, G, _ = boundary_frame(T, component)
    x, y = alpha.legs
    if gcd(x, y) != 1:
        raise DomainError(f"{alpha} is not a slope")
    e = alpha.entries
    if sorted(e) == [1, 1, 2]:
        return _fold_faces(T, F, G, e.index(2))
    v = canonical_fraction(alpha)
    lp = LayeredPath.from_moves((2,)) if (v.p, v.q) == (0, 1) else _layered_for(v)
    m = lp.meridian
    pi = _match_slots(alpha, m)
    if pi is None:
        raise DomainError(f"no filling solid torus has meridian aligned with {alpha}")
    M = materialize_labeled(lp)
    return _glue_frames(T, F, G, M, pi, pinch=lp.creased)


def _match_slots(alpha: SlopeTriple, m: SlopeTriple):
    from itertools import permutations

    for pi in permutations(range(3)):
        if all(alpha[s] == m[pi[s]] for s in range(3)):
            return pi
    return None
