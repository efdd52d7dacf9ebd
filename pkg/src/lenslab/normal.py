"""Normal and almost normal surfaces in face-pairing triangulations.

Coordinates per tetrahedron are ``[T0, T1, T2, T3, Q0, Q1, Q2]`` with an
optional ``[O0, O1, O2]`` block in octagon mode.  ``Tv`` cuts off vertex
v.  Quad and octagon type k refers to the vertex partition
``PARTITIONS[k]``: 0 is {01|23}, 1 is {02|13}, 2 is {03|12}.  An octagon
of type k crosses the two edges of its partition twice each.

Normal arcs in face f sit at the corners of the face.  The arc at corner
v is cut by triangles at v, by the quad whose partition pairs v with f,
and by every octagon of the other two types.  Copies along one corner
are stacked by distance from v: triangles, then the quad, then the
octagon.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional

from . import _enum_py
from .errors import DomainError, SizeGuardError
from .tri import EDGES, Triangulation, edge_index, face_vertices

try:  # compiled kernel when available
    from . import _enum as _kernel  # type: ignore[attr-defined]

    KERNEL = "compiled"
except ImportError:  # pragma: no cover - exercised when the extension is absent
    _kernel = _enum_py
    KERNEL = "python"

if os.environ.get("LENSLAB_PURE_PYTHON"):
    _kernel = _enum_py
    KERNEL = "python"

__all__ = [
    "PARTITIONS",
    "NormalComponent",
    "NormalSurface",
    "matching_equations",
    "matching_matrix",
    "enumerate_surfaces",
    "enumerate_vectors",
    "connected_surfaces",
    "reconstruct",
    "classify",
    "vertex_link",
    "edge_link",
    "find_nonvertexlinking_sphere",
    "find_nonthinedge_torus",
    "KERNEL",
    "quad_type",
    "satisfies",
    "admissible",
    "component_count",
    "euler_from_pieces",
    "thin_edge_links",
    "surface_name",
]

PARTITIONS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def quad_type(a: int, b: int) -> int:
    """Partition index whose blocks put a and b together."""
    lo, hi = (a, b) if a < b else (b, a)
    if (lo, hi) in ((0, 1), (2, 3)):
        return 0
    if (lo, hi) in ((0, 2), (1, 3)):
        return 1
    return 2


def _max_tets() -> int:
    raw = os.environ.get("LENSLAB_MAX_TETS")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return 12


def _width(octagons: bool) -> int:
    return 10 if octagons else 7


# matching equations ---------------------------------------------------------------


def _corner_terms(t: int, f: int, v: int, octagons: bool) -> list[int]:
    w = _width(octagons)
    q = quad_type(v, f)
    terms = [w * t + v, w * t + 4 + q]
    if octagons:
        terms += [w * t + 7 + o for o in range(3) if o != q]
    return terms


def _glued_pairs(T: Triangulation):
    for t, f, t2, f2, perm in T.gluing_records():
        yield t, f, t2, f2, perm


def _check_supported(T: Triangulation) -> None:
    sk = T.skeleton()
    if sk.reversed_edges:
        raise DomainError("an edge is identified with itself in reverse; no matching system")


def matching_equations(T: Triangulation, octagons: bool = False):
    """One (lhs, rhs) pair of variable-index lists per glued face and corner."""
    _check_supported(T)
    out = []
    for t, f, t2, f2, perm in _glued_pairs(T):
        for v in face_vertices(f):
            out.append((_corner_terms(t, f, v, octagons), _corner_terms(t2, f2, perm[v], octagons)))
    return out


def matching_matrix(T: Triangulation, octagons: bool = False) -> list[list[int]]:
    n = T.tet_count * _width(octagons)
    rows = []
    for lhs, rhs in matching_equations(T, octagons):
        row = [0] * n
        for x in lhs:
            row[x] += 1
        for x in rhs:
            row[x] -= 1
        rows.append(row)
    return rows


def satisfies(T: Triangulation, vec, octagons: bool = False) -> bool:
    for row in matching_matrix(T, octagons):
        if sum(a * b for a, b in zip(row, vec)):
            return False
    return True


def admissible(vec, n: int, octagons: bool = False) -> bool:
    w = _width(octagons)
    if any(x < 0 for x in vec):
        return False
    octs = 0
    for t in range(n):
        block = vec[w * t: w * t + w]
        if sum(1 for x in block[4:7] if x) > 1:
            return False
        if octagons:
            o = sum(block[7:10])
            octs += o
            if o and any(block[4:7]):
                return False
    return not octagons or octs == 1


# enumeration ----------------------------------------------------------------------


def _tet_order(T: Triangulation) -> list[int]:
    order, seen = [], set()
    for start in range(T.tet_count):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            t = queue.pop(0)
            order.append(t)
            for f in range(4):
                g = T.gluings[t][f]
                if g is not None and g[0] not in seen:
                    seen.add(g[0])
                    queue.append(g[0])
    return order


def _kernel_equations(T: Triangulation, order, oct_tet: int, oct_type: int):
    pos = {t: i for i, t in enumerate(order)}

    def octc(t, f, v):
        return 1 if t == oct_tet and quad_type(v, f) != oct_type else 0

    eqs = []
    for t, f, t2, f2, perm in _glued_pairs(T):
        for v in face_vertices(f):
            v2 = perm[v]
            const = octc(t2, f2, v2) - octc(t, f, v)
            eqs.append((max(pos[t], pos[t2]), t, v, quad_type(v, f), t2, v2, quad_type(v2, f2), const))
    return eqs


def _guard(T: Triangulation, bound: int) -> None:
    if bound < 1:
        raise DomainError("bound must be at least 1")
    limit = _max_tets()
    if T.tet_count > limit:
        raise SizeGuardError(
            f"enumeration is limited to {limit} tetrahedra (set LENSLAB_MAX_TETS to raise it)"
        )


def _widen(vec, n: int, oct_tet: int, oct_type: int):
    out = []
    for t in range(n):
        block = list(vec[7 * t: 7 * t + 7]) + [0, 0, 0]
        if t == oct_tet:
            block[7 + oct_type] = 1
        out.extend(block)
    return tuple(out)


def enumerate_vectors(T: Triangulation, bound: int = 6, octagons: bool = False, reduced: bool = False):
    """Admissible matching vectors with every coordinate at most ``bound``.

    ``reduced`` keeps only the vectors whose triangle coordinates cannot
    drop a vertex link, i.e. the candidates for connected surfaces other
    than vertex links.
    """
    _guard(T, bound)
    _check_supported(T)
    n = T.tet_count
    order = _tet_order(T)
    found = set()
    if not octagons:
        eqs = _kernel_equations(T, order, -1, -1)
        for v in _kernel.enumerate_kernel(n, order, eqs, bound, -1, -1, reduced, False):
            found.add(tuple(v))
    else:
        for ot in range(n):
            for ok in range(3):
                eqs = _kernel_equations(T, order, ot, ok)
                for v in _kernel.enumerate_kernel(n, order, eqs, bound, ot, ok, reduced, False):
                    found.add(_widen(v, n, ot, ok))
                # the octagon alone, with no triangles or quads anywhere
                zero = tuple([0] * (7 * n))
                if _all_const_zero(eqs):
                    found.add(_widen(zero, n, ot, ok))
    return sorted(found)


def _all_const_zero(eqs) -> bool:
    return all(e[7] == 0 for e in eqs)


# reconstruction -------------------------------------------------------------------


def _triangle_cycle(v: int):
    return [((v, w), None) for w in range(4) if w != v]


def _quad_cycle(k: int):
    (a, b), (c, d) = PARTITIONS[k]
    return [((a, c), None), ((a, d), None), ((b, d), None), ((b, c), None)]


def _octagon_cycle(k: int):
    (a, b), (c, d) = PARTITIONS[k]
    ab, cd = tuple(sorted((a, b))), tuple(sorted((c, d)))
    return [(ab, a), ((a, c), None), (cd, c), ((b, c), None), (ab, b), ((b, d), None), (cd, d), ((a, d), None)]


def _norm_point(p):
    (x, y), near = p
    return ((x, y) if x < y else (y, x), near)


def _cycle(kind: str, k: int):
    if kind == "T":
        c = _triangle_cycle(k)
    elif kind == "Q":
        c = _quad_cycle(k)
    else:
        c = _octagon_cycle(k)
    return [_norm_point(p) for p in c]


_CYCLES = {(kind, k): _cycle(kind, k) for kind in "TQO" for k in (range(4) if kind == "T" else range(3))}


@dataclass(frozen=True)
class NormalComponent:
    vector: tuple
    euler: int
    orientable: bool
    boundary: tuple  # one slot-ordered triple per boundary curve
    edge_weights: tuple
    octagon: bool
    vertices: int
    edges: int
    faces: int

    @property
    def closed(self) -> bool:
        return not self.boundary

    @property
    def boundary_count(self) -> int:
        return len(self.boundary)

    @property
    def genus(self) -> int:
        """Orientable genus, or nonorientable genus (number of crosscaps)."""
        b = len(self.boundary)
        if self.orientable:
            return (2 - self.euler - b) // 2
        return 2 - self.euler - b


@dataclass(frozen=True)
class NormalSurface:
    vector: tuple
    octagons: bool
    components: tuple[NormalComponent, ...]
    edge_weights: tuple

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def euler(self) -> int:
        return sum(c.euler for c in self.components)


class _PieceUF:
    def __init__(self):
        self.parent: dict = {}
        self.par: dict = {}
        self.bad: set = set()

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.par[x] = 0

    def find(self, x):
        p = 0
        path = []
        while self.parent[x] != x:
            path.append(x)
            p ^= self.par[x]
            x = self.parent[x]
        root = x
        # compress
        acc = p
        for y in path:
            nxt_par = acc ^ self.par[y]
            self.parent[y] = root
            self.par[y] = acc
            acc = nxt_par
        return root, p

    def union(self, a, b, rel):
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            if (pa ^ pb) != rel:
                self.bad.add(ra)
            return
        self.parent[rb] = ra
        self.par[rb] = pa ^ pb ^ rel
        if rb in self.bad:
            self.bad.add(ra)


def _counts(vec, t: int, w: int):
    block = vec[w * t: w * t + w]
    tri = block[0:4]
    quad = block[4:7]
    octs = block[7:10] if w == 10 else (0, 0, 0)
    return tri, quad, octs


def _arc_piece(vec, w, t, f, v, d):
    tri, quad, octs = _counts(vec, t, w)
    if d < tri[v]:
        return (t, "T", v, d)
    d -= tri[v]
    q = quad_type(v, f)
    if d < quad[q]:
        # copies are numbered from the side of vertex 0
        return (t, "Q", q, d if v in PARTITIONS[q][0] else quad[q] - 1 - d)
    d -= quad[q]
    for o in range(3):
        if o != q and octs[o]:
            if d < octs[o]:
                return (t, "O", o, d)
            d -= octs[o]
    raise AssertionError("arc index out of range")


def _arc_count(vec, w, t, f, v):
    tri, quad, octs = _counts(vec, t, w)
    q = quad_type(v, f)
    return tri[v] + quad[q] + sum(octs[o] for o in range(3) if o != q)


def _edge_weight(vec, w, t, a, b):
    tri, quad, octs = _counts(vec, t, w)
    k = quad_type(a, b)
    return (
        tri[a]
        + tri[b]
        + sum(quad[m] for m in range(3) if m != k)
        + sum(octs[m] for m in range(3) if m != k)
        + 2 * octs[k]
    )


def _arc_dir(piece, f, v):
    """+1 if the piece's cycle runs from the lower to the higher other vertex."""
    _, kind, k, _ = piece
    w1, w2 = (x for x in face_vertices(f) if x != v)
    cyc = _CYCLES[(kind, k)]
    doubled = kind == "O"

    def label(w):
        e = (v, w) if v < w else (w, v)
        if doubled and quad_type(v, w) == k:
            return (e, v)
        return (e, None)

    i1, i2 = cyc.index(label(w1)), cyc.index(label(w2))
    n = len(cyc)
    if (i1 + 1) % n == i2:
        return 1
    if (i2 + 1) % n == i1:
        return -1
    raise AssertionError("arc endpoints are not adjacent in the piece")


def _pieces(vec, n, w):
    out = []
    for t in range(n):
        tri, quad, octs = _counts(vec, t, w)
        for v in range(4):
            out += [(t, "T", v, d) for d in range(tri[v])]
        for q in range(3):
            out += [(t, "Q", q, d) for d in range(quad[q])]
        for o in range(3):
            out += [(t, "O", o, d) for d in range(octs[o])]
    return out


def reconstruct(T: Triangulation, vec, octagons: Optional[bool] = None, slot_classes: Optional[Iterable[int]] = None) -> NormalSurface:
    """Build the surface from its coordinates and read off its invariants.

    ``slot_classes`` orders the boundary edge classes for boundary triples;
    by default they are the boundary classes in increasing order.
    """
    n = T.tet_count
    if octagons is None:
        octagons = len(vec) == 10 * n and len(vec) != 7 * n
    w = _width(octagons)
    if len(vec) != w * n:
        raise ValueError(f"vector has {len(vec)} entries, expected {w * n}")
    sk = T.skeleton()
    pieces = _pieces(vec, n, w)
    uf = _PieceUF()
    for p in pieces:
        uf.add(p)

    def point(t, v, u, d):
        """Global id of the d-th point from v on tetrahedron edge vu."""
        cls, sign = sk.edge_of[t][edge_index(v, u)]
        forward = (v < u) == (sign == 1)
        weight = _edge_weight(vec, w, t, v, u)
        return (cls, d if forward else weight - 1 - d)

    boundary_arcs = []
    for t in range(n):
        for f in range(4):
            g = T.gluings[t][f]
            for v in face_vertices(f):
                cnt = _arc_count(vec, w, t, f, v)
                w1, w2 = (x for x in face_vertices(f) if x != v)
                for d in range(cnt):
                    p = _arc_piece(vec, w, t, f, v, d)
                    ends = (point(t, v, w1, d), point(t, v, w2, d))
                    if g is None:
                        boundary_arcs.append((p, ends))
                        continue
                    t2, f2, perm = g
                    if (t2, f2) < (t, f):
                        continue
                    v2 = perm[v]
                    q = _arc_piece(vec, w, t2, f2, v2, d)
                    if _arc_count(vec, w, t2, f2, v2) != cnt:
                        raise AssertionError("matching equations fail at a glued face")
                    d1 = _arc_dir(p, f, v)
                    a1, a2 = perm[w1], perm[w2]
                    d2 = _arc_dir(q, f2, v2) * (1 if a1 < a2 else -1)
                    # adjacent pieces induce opposite directions on a shared arc
                    same = -d1 * d2
                    uf.union(p, q, 0 if same == 1 else 1)

    comp_of = {p: uf.find(p)[0] for p in pieces}
    roots = sorted(set(comp_of.values()))
    faces = {r: 0 for r in roots}
    for p in pieces:
        faces[comp_of[p]] += 1
    edges = {r: 0 for r in roots}
    # interior arcs: count by component of one side
    verts: dict = {r: set() for r in roots}
    for t in range(n):
        for f in range(4):
            g = T.gluings[t][f]
            for v in face_vertices(f):
                cnt = _arc_count(vec, w, t, f, v)
                w1, w2 = (x for x in face_vertices(f) if x != v)
                for d in range(cnt):
                    p = _arc_piece(vec, w, t, f, v, d)
                    r = comp_of[p]
                    verts[r].add(point(t, v, w1, d))
                    verts[r].add(point(t, v, w2, d))
                    if g is None or (g[0], g[1]) > (t, f):
                        edges[r] += 1

    # boundary curves
    if slot_classes is None:
        slot_classes = sorted(c for c in range(sk.num_edges) if sk.edge_boundary[c])
    slot_classes = list(slot_classes)
    bparent: dict = {}

    def bfind(x):
        while bparent[x] != x:
            bparent[x] = bparent[bparent[x]]
            x = bparent[x]
        return x

    for _, (e1, e2) in boundary_arcs:
        for e in (e1, e2):
            bparent.setdefault(e, e)
        r1, r2 = bfind(e1), bfind(e2)
        if r1 != r2:
            bparent[r2] = r1
    curves: dict = {}
    curve_comp: dict = {}
    for p, (e1, e2) in boundary_arcs:
        r = bfind(e1)
        curves.setdefault(r, set()).update((e1, e2))
        curve_comp[r] = comp_of[p]
    boundary_by_comp: dict = {r: [] for r in roots}
    for r, pts in curves.items():
        counts = [sum(1 for c, _ in pts if c == cls) for cls in slot_classes]
        boundary_by_comp[curve_comp[r]].append(tuple(counts))

    total_weights = [0] * sk.num_edges
    for t in range(n):
        for k, (a, b) in enumerate(EDGES):
            cls = sk.edge_of[t][k][0]
            total_weights[cls] = _edge_weight(vec, w, t, a, b)

    comps = []
    for r in roots:
        cvec = [0] * (w * n)
        for p in pieces:
            if comp_of[p] == r:
                t, kind, k, _ = p
                off = {"T": 0, "Q": 4, "O": 7}[kind]
                cvec[w * t + off + k] += 1
        weights = [0] * sk.num_edges
        for cls, _ in verts[r]:
            weights[cls] += 1
        V, E, F = len(verts[r]), edges[r], faces[r]
        comps.append(
            NormalComponent(
                vector=tuple(cvec),
                euler=V - E + F,
                orientable=r not in uf.bad,
                boundary=tuple(sorted(boundary_by_comp[r])),
                edge_weights=tuple(weights),
                octagon=any(cvec[w * t + 7 + o] for t in range(n) for o in range(3)) if w == 10 else False,
                vertices=V,
                edges=E,
                faces=F,
            )
        )
    comps.sort(key=lambda c: c.vector)
    return NormalSurface(tuple(vec), octagons, tuple(comps), tuple(total_weights))


def euler_from_pieces(T: Triangulation, vec, octagons: bool = False) -> int:
    """Euler characteristic from coordinates alone (no gluing of pieces).

    Vertices are edge weights, faces are pieces, and edges are arcs with
    glued pairs counted once.
    """
    n = T.tet_count
    w = _width(octagons)
    sk = T.skeleton()
    weights = [0] * sk.num_edges
    for t in range(n):
        for k, (a, b) in enumerate(EDGES):
            weights[sk.edge_of[t][k][0]] = _edge_weight(vec, w, t, a, b)
    V = sum(weights)
    F = len(_pieces(vec, n, w))
    E = 0
    for t in range(n):
        for f in range(4):
            g = T.gluings[t][f]
            if g is not None and (g[0], g[1]) < (t, f):
                continue
            E += sum(_arc_count(vec, w, t, f, v) for v in face_vertices(f))
    return V - E + F


# special surfaces -------------------------------------------------------------------


def vertex_link(T: Triangulation, vertex_class: int = 0, octagons: bool = False) -> tuple:
    sk = T.skeleton()
    w = _width(octagons)
    vec = [0] * (w * T.tet_count)
    for t in range(T.tet_count):
        for v in range(4):
            if sk.vertex_of[t][v] == vertex_class:
                vec[w * t + v] = 1
    return tuple(vec)


def edge_link(T: Triangulation, edge_class: int) -> Optional[tuple]:
    """Normalised boundary of a small neighbourhood of an edge.

    One quad for each occurrence of the edge, triangles as small as the
    matching equations allow.  None when the quads are not admissible
    (the edge meets a tetrahedron in two different quad types).
    """
    sk = T.skeleton()
    n = T.tet_count
    quads = [[0, 0, 0] for _ in range(n)]
    for t in range(n):
        for k, (a, b) in enumerate(EDGES):
            if sk.edge_of[t][k][0] == edge_class:
                quads[t][quad_type(a, b)] += 1
    if any(sum(1 for x in q if x) > 1 for q in quads):
        return None
    order = _tet_order(T)
    eqs = _kernel_equations(T, order, -1, -1)
    # solve for the triangles with the potentials of the enumeration kernel
    parent = list(range(4 * n))
    pot = [0] * (4 * n)

    def find(x):
        d = 0
        while parent[x] != x:
            d += pot[x]
            x = parent[x]
        return x, d

    for _, ta, va, qa, tb, vb, qb, c in eqs:
        diff = quads[tb][qb] - quads[ta][qa] + c
        x, px = find(4 * ta + va)
        y, py = find(4 * tb + vb)
        if x == y:
            if px - py != diff:
                return None
            continue
        parent[y] = x
        pot[y] = px - py - diff
    vals = [find(x) for x in range(4 * n)]
    low: dict = {}
    for r, d in vals:
        low[r] = min(low.get(r, d), d)
    vec = []
    for t in range(n):
        vec += [vals[4 * t + v][1] - low[vals[4 * t + v][0]] for v in range(4)] + quads[t]
    return tuple(vec)


# enumeration front ends ------------------------------------------------------------


def component_count(T: Triangulation, vec, octagons: bool = False) -> int:
    """Number of connected components, without building the full surface."""
    return _kernel.component_count(T.tet_count, _width(octagons), list(vec), T.gluing_records())


def enumerate_surfaces(T: Triangulation, bound: int = 6, octagons: bool = False, connected_only: bool = False, closed_only: bool = False, slot_classes=None):
    """(vector, NormalSurface) pairs in deterministic order."""
    vecs = enumerate_vectors(T, bound, octagons, reduced=connected_only)
    if connected_only:
        extra = set()
        sk = T.skeleton()
        for c in range(sk.num_vertices):
            v = vertex_link(T, c, octagons)
            if not octagons and max(v) <= bound:
                extra.add(v)
        vecs = sorted(set(vecs) | extra)
    out = []
    for v in vecs:
        if connected_only and component_count(T, v, octagons) != 1:
            continue
        S = reconstruct(T, v, octagons, slot_classes)
        if closed_only and any(c.boundary for c in S.components):
            continue
        out.append((v, S))
    return out


def connected_surfaces(T: Triangulation, bound: int = 6, octagons: bool = False, slot_classes=None) -> list[NormalComponent]:
    return [S.components[0] for _, S in enumerate_surfaces(T, bound, octagons, True, False, slot_classes)]


def find_nonvertexlinking_sphere(T: Triangulation, bound: int = 8) -> Optional[NormalComponent]:
    sk = T.skeleton()
    if not sk.closed:
        raise DomainError("sphere search needs a closed triangulation")
    links = {vertex_link(T, c) for c in range(sk.num_vertices)}
    for v in enumerate_vectors(T, bound, False, reduced=True):
        if v in links or component_count(T, v) != 1:
            continue
        S = reconstruct(T, v, False)
        if S.connected and S.components[0].euler == 2:
            return S.components[0]
    return None


def thin_edge_links(desc) -> set:
    """Edge-link vectors of the thin edges of a folded lens description."""
    from .lens import closed_complex

    from .lst import THICK, materialize_labeled

    M = materialize_labeled(desc.path)
    T = closed_complex(desc)
    owner = desc.path.slot_edges()
    folded_pair = {owner[k] for k in range(3) if k != desc.fold_slot}
    sk_classes = {}
    # an edge's class in the closed complex: same representative tetrahedron edge
    sk = T.skeleton()
    for e in desc.path.edges:
        t, a, b = M.edge_reps[e.id]
        sk_classes[e.id] = sk.edge_of[t][edge_index(a, b)][0]
    thick = {sk_classes[THICK]} | {sk_classes[e] for e in folded_pair}
    out = set()
    for eid, cls in sk_classes.items():
        if cls in thick:
            continue
        v = edge_link(T, cls)
        if v is not None:
            out.add(v)
    return out


def find_nonthinedge_torus(desc, bound: int = 6) -> Optional[NormalComponent]:
    """A normal torus in the folded lens space that is not a thin edge link."""
    from .lens import closed_complex

    T = closed_complex(desc)
    links = thin_edge_links(desc)
    for v in enumerate_vectors(T, bound, False, reduced=True):
        if v in links or component_count(T, v) != 1:
            continue
        S = reconstruct(T, v, False)
        if S.connected:
            c = S.components[0]
            if c.euler == 0 and c.orientable and not c.boundary:
                return c
    return None


# classification ----------------------------------------------------------------------


def surface_name(comp: NormalComponent) -> str:
    """Plain topological type, for complexes without a layered description."""
    nb = comp.boundary_count
    g = comp.genus
    if comp.orientable:
        base = {0: "sphere", 1: "torus"}.get(g, f"genus {g} surface")
        if nb == 0:
            return base
        if g == 0 and nb <= 2:
            return ("disk", "annulus")[nb - 1]
        return f"{base} with {nb} holes"
    base = {1: "projective plane", 2: "Klein bottle"}.get(g, f"nonorientable genus {g} surface")
    if nb == 0:
        return base
    if g == 1 and nb == 1:
        return "Moebius band"
    return f"{base} with {nb} holes"

TRIVIAL_SLOPE = (2, 2, 2)


def classify(lp, comp: NormalComponent, tri: Optional[Triangulation] = None) -> str:
    """Taxonomy label of a connected normal surface in a layered solid torus.

    Works from the invariant signature: Euler characteristic,
    orientability, boundary curves (slot-ordered triples) against the
    meridian and the edge-slope table.  ``tri`` is the realised complex,
    needed to tell the vertex-linking disk from other trivial disks.
    """
    from .lst import is_nearly_minimal

    merid = tuple(lp.meridian.entries)
    by_slope: dict = {}
    for e in lp.edges:
        by_slope.setdefault(tuple(e.final_slope.entries), []).append(e)
    nearly, _ = is_nearly_minimal(lp)
    chi, bd = comp.euler, comp.boundary
    if not bd or any(s != TRIVIAL_SLOPE and s != merid and s not in by_slope for s in bd):
        return "unclassified"
    if len(set(bd)) != 1:
        return "unclassified"
    s = bd[0]
    nb = len(bd)
    edges = by_slope.get(s, [])
    if comp.orientable:
        g, rem = divmod(2 - chi - nb, 2)
        if rem or g < 0:
            return "unclassified"
        tubes = "" if g == 0 else f" with {g} tube" + ("s" if g > 1 else "")
        if nb == 1 and s == TRIVIAL_SLOPE:
            if g == 0 and tri is not None and comp.vector != vertex_link(tri):
                return "non-vertex-linking trivial disk" if not nearly else "unclassified"
            return "vertex-linking disk" + tubes
        if nb == 1 and s == merid:
            if g == 0:
                return "meridional disk"
            return "unclassified" if nearly else "meridional disk" + tubes
        if nb == 2 and edges:
            if not nearly and not any(e.in_boundary for e in edges):
                if any(e.final_slope.entries == merid for e in edges) or s == merid:
                    return "non-edge-linking annulus" + tubes
                if len([e for e in edges if e.kind == "thin"]) > 1:
                    return "fat annulus" + tubes
            return "edge-linking annulus" + tubes
        return "unclassified"
    if nb == 1 and edges:
        h = 1 - chi
        if any(e.meridian_count % 2 == 0 for e in edges):
            return f"nonorientable genus {h}"
    return "unclassified"
