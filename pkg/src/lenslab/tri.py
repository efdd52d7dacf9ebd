"""Face-pairing triangulations.

Tetrahedron vertices are 0..3 and face ``f`` is the face opposite vertex
``f``.  A gluing sends face ``f`` of tetrahedron ``t`` to face ``f2`` of
``t2`` through a permutation ``perm`` of {0,1,2,3} with ``perm[f] == f2``.

A complex may also carry *pins*: extra edge identifications that do not
come from any face pairing.  They only arise from the degenerate
one-triangle Moebius band and creased 3-cell, whose edges are identified
inside a 2-dimensional piece.  Pins take part in every skeleton and
homology computation; the manifold check flags them when no face pairing
implies them.
"""

from __future__ import annotations

import itertools
import os
import threading
from dataclasses import dataclass, field
from typing import Iterable

from .errors import DomainError, ParseError, SizeGuardError

__all__ = [
    "Perm",
    "Triangulation",
    "SkeletonReport",
    "EDGES",
    "edge_index",
    "validate",
    "layer_on_boundary_edge",
    "glue_boundaries",
    "fold",
    "homology_h1",
    "h1_order",
    "isomorphic",
    "serialize",
    "parse",
    "max_tets",
    "torus_boundary",
    "disjoint_union",
    "canonical_form",
    "drop_redundant_pins",
]

Perm = tuple  # 4-tuple of ints, perm[i] is the image of vertex i

IDENTITY = (0, 1, 2, 3)
EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_EDGE_INDEX = {e: k for k, e in enumerate(EDGES)}
_ALL_PERMS = tuple(itertools.permutations(range(4)))


def edge_index(a: int, b: int) -> int:
    return _EDGE_INDEX[(a, b) if a < b else (b, a)]


def face_vertices(f: int) -> tuple[int, int, int]:
    return tuple(v for v in range(4) if v != f)


def inverse(p: Perm) -> Perm:
    out = [0] * 4
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[q[i]] for i in range(4))


def _parity(p: Perm) -> int:
    inv = sum(1 for i in range(4) for j in range(i + 1, 4) if p[i] > p[j])
    return inv & 1


def max_tets(default: int = 8) -> int:
    raw = os.environ.get("LENSLAB_MAX_TETS")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return default


class _UF:
    """Union-find carrying a parity bit relative to the root."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.par = [0] * n

    def find(self, x: int) -> tuple[int, int]:
        p = 0
        root = x
        while self.parent[root] != root:
            p ^= self.par[root]
            root = self.parent[root]
        # path compression
        q = p
        while self.parent[x] != root:
            nxt = self.parent[x]
            np_ = q ^ self.par[x]
            self.parent[x] = root
            self.par[x] = q
            x, q = nxt, np_
        return root, p

    def union(self, a: int, b: int, rel: int) -> bool:
        """Join so that parity(a) ^ parity(b) == rel.  False on contradiction."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == rel
        if ra < rb:
            self.parent[rb] = ra
            self.par[rb] = pa ^ pb ^ rel
        else:
            self.parent[ra] = rb
            self.par[ra] = pa ^ pb ^ rel
        return True


@dataclass
class SkeletonReport:
    """Derived cells of a triangulation.

    ``edge_of[t][k]`` is ``(class, sign)`` for tetrahedron edge ``EDGES[k]``;
    sign +1 means the edge runs with the class orientation.
    """

    tet_count: int
    edge_of: list
    vertex_of: list
    edge_degree: list
    edge_boundary: list
    edge_rep: list
    vertex_link_chi: list
    vertex_link_closed: list
    face_classes: list
    boundary_faces: list
    reversed_edges: list
    problems: list
    manifold: bool
    euler: int

    @property
    def num_edges(self) -> int:
        return len(self.edge_degree)

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_link_chi)

    @property
    def num_faces(self) -> int:
        return len(self.face_classes)

    @property
    def closed(self) -> bool:
        return not self.boundary_faces

    def boundary_edges(self) -> list[int]:
        return [c for c, b in enumerate(self.edge_boundary) if b]

    def boundary_summary(self) -> dict:
        if not self.boundary_faces:
            return {"faces": 0, "edges": 0, "vertices": 0, "euler": 0}
        edges = set()
        verts = set()
        for t, f in self.boundary_faces:
            fv = face_vertices(f)
            for a, b in itertools.combinations(fv, 2):
                edges.add(self.edge_of[t][edge_index(a, b)][0])
            for v in fv:
                verts.add(self.vertex_of[t][v])
        nf = len(self.boundary_faces)
        return {
            "faces": nf,
            "edges": len(edges),
            "vertices": len(verts),
            "euler": len(verts) - len(edges) + nf,
        }


@dataclass(frozen=True)
class Triangulation:
    """Immutable face-pairing triangulation.

    ``gluings[t][f]`` is ``None`` for a boundary face or ``(t2, f2, perm)``.
    ``pins`` holds extra edge identifications ``((t, a, b), (t2, c, d))``
    sending vertex a to c and b to d.
    """

    tet_count: int
    gluings: tuple
    pins: tuple = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, compare=False, repr=False, hash=False)

    def __post_init__(self) -> None:
        g = tuple(tuple(row) for row in self.gluings)
        object.__setattr__(self, "gluings", g)
        object.__setattr__(self, "pins", tuple(self.pins))
        if len(g) != self.tet_count:
            raise ValueError("gluing table size does not match tet_count")
        for t in range(self.tet_count):
            if len(g[t]) != 4:
                raise ValueError(f"tetrahedron {t} needs four face entries")
            for f in range(4):
                entry = g[t][f]
                if entry is None:
                    continue
                t2, f2, p = entry
                p = tuple(p)
                if sorted(p) != [0, 1, 2, 3]:
                    raise ValueError(f"gluing at ({t},{f}) is not a permutation: {p}")
                if p[f] != f2:
                    raise ValueError(f"gluing at ({t},{f}) sends face vertex {f} to {p[f]}, expected {f2}")
                if not 0 <= t2 < self.tet_count:
                    raise ValueError(f"gluing at ({t},{f}) names missing tetrahedron {t2}")
                if (t2, f2) == (t, f):
                    raise ValueError(f"face ({t},{f}) is glued to itself")
                back = g[t2][f2]
                if back is None or back[0] != t or back[1] != f or tuple(back[2]) != inverse(p):
                    raise ValueError(f"gluing at ({t},{f}) is not matched by ({t2},{f2})")

    # construction helpers -------------------------------------------------

    @classmethod
    def from_gluings(cls, n: int, glues: Iterable, pins: Iterable = ()) -> "Triangulation":
        """Build from one-sided gluing records ``(t, f, t2, perm)``."""
        table = [[None] * 4 for _ in range(n)]
        for t, f, t2, p in glues:
            p = tuple(p)
            f2 = p[f]
            if table[t][f] is not None or table[t2][f2] is not None:
                raise ValueError(f"face ({t},{f}) or ({t2},{f2}) glued twice")
            table[t][f] = (t2, f2, p)
            table[t2][f2] = (t, f, inverse(p))
        return cls(n, tuple(tuple(r) for r in table), tuple(pins))

    def gluing_records(self) -> list[tuple[int, int, int, int, Perm]]:
        """Each glued pair once, from its lexicographically smaller side."""
        out = []
        for t in range(self.tet_count):
            for f in range(4):
                e = self.gluings[t][f]
                if e is not None and (t, f) < (e[0], e[1]):
                    out.append((t, f, e[0], e[1], e[2]))
        return out

    def with_gluings(self, extra_tets: int, glues: Iterable, pins: Iterable = ()) -> "Triangulation":
        """Copy with ``extra_tets`` new tetrahedra and new one-sided gluings."""
        n = self.tet_count + extra_tets
        table = [list(r) for r in self.gluings] + [[None] * 4 for _ in range(extra_tets)]
        for t, f, t2, p in glues:
            p = tuple(p)
            f2 = p[f]
            if table[t][f] is not None or table[t2][f2] is not None:
                raise DomainError(f"face ({t},{f}) or ({t2},{f2}) is already glued")
            table[t][f] = (t2, f2, p)
            table[t2][f2] = (t, f, inverse(p))
        return Triangulation(n, tuple(tuple(r) for r in table), self.pins + tuple(pins))

    def boundary_faces(self) -> list[tuple[int, int]]:
        return [(t, f) for t in range(self.tet_count) for f in range(4) if self.gluings[t][f] is None]

    # skeleton ---------------------------------------------------------------

    def skeleton(self) -> SkeletonReport:
        rep = self._cache.get("skeleton")
        if rep is None:
            with self._lock:
                rep = self._cache.get("skeleton")
                if rep is None:
                    rep = _compute_skeleton(self)
                    self._cache["skeleton"] = rep
        return rep

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return (
            self.tet_count == other.tet_count
            and self.gluings == other.gluings
            and set(_norm_pin(p) for p in self.pins) == set(_norm_pin(p) for p in other.pins)
        )

    def __hash__(self) -> int:
        return hash((self.tet_count, self.gluings))


def _norm_pin(pin):
    (t, a, b), (t2, c, d) = pin
    if a > b:
        a, b, c, d = b, a, d, c
    x, y = (t, a, b), (t2, c, d)
    if y < x:
        if c > d:
            c, d, a, b = d, c, b, a
        x, y = (t2, c, d), (t, a, b)
    return (x, y)


def _edge_unions(T: Triangulation, uf: _UF, with_pins: bool) -> list:
    """Union tetrahedron edges; returns list of contradicting nodes."""
    bad = []
    for t in range(T.tet_count):
        for f in range(4):
            e = T.gluings[t][f]
            if e is None:
                continue
            t2, f2, p = e
            if (t, f) > (t2, f2):
                continue
            for a, b in itertools.combinations(face_vertices(f), 2):
                c, d = p[a], p[b]
                rel = 0 if c < d else 1
                if not uf.union(6 * t + edge_index(a, b), 6 * t2 + edge_index(c, d), rel):
                    bad.append(6 * t + edge_index(a, b))
    if with_pins:
        for (t, a, b), (t2, c, d) in T.pins:
            rel = (0 if a < b else 1) ^ (0 if c < d else 1)
            if not uf.union(6 * t + edge_index(a, b), 6 * t2 + edge_index(c, d), rel):
                bad.append(6 * t + edge_index(a, b))
    return bad


def _vertex_unions(T: Triangulation, with_pins: bool) -> _UF:
    uf = _UF(4 * T.tet_count)
    for t in range(T.tet_count):
        for f in range(4):
            e = T.gluings[t][f]
            if e is None:
                continue
            t2, _, p = e
            for v in face_vertices(f):
                uf.union(4 * t + v, 4 * t2 + p[v], 0)
    if with_pins:
        for (t, a, b), (t2, c, d) in T.pins:
            uf.union(4 * t + a, 4 * t2 + c, 0)
            uf.union(4 * t + b, 4 * t2 + d, 0)
    return uf


def _compute_skeleton(T: Triangulation) -> SkeletonReport:
    n = T.tet_count
    problems: list[str] = []

    euf = _UF(6 * n)
    bad_nodes = _edge_unions(T, euf, with_pins=True)
    roots: dict[int, int] = {}
    edge_of = [[None] * 6 for _ in range(n)]
    edge_rep = []
    for t in range(n):
        for k in range(6):
            r, par = euf.find(6 * t + k)
            if r not in roots:
                roots[r] = len(roots)
                rt, rk = divmod(r, 6)
                edge_rep.append((rt, EDGES[rk]))
            edge_of[t][k] = (roots[r], 1 if par == 0 else -1)
    ne = len(roots)
    reversed_edges = sorted({roots[euf.find(x)[0]] for x in bad_nodes})
    for c in reversed_edges:
        problems.append(f"edge {c} is identified with itself in reverse")

    vuf = _vertex_unions(T, with_pins=True)
    vroots: dict[int, int] = {}
    vertex_of = [[None] * 4 for _ in range(n)]
    for t in range(n):
        for v in range(4):
            r, _ = vuf.find(4 * t + v)
            if r not in vroots:
                vroots[r] = len(vroots)
            vertex_of[t][v] = vroots[r]
    nv = len(vroots)

    edge_degree = [0] * ne
    for t in range(n):
        for k in range(6):
            edge_degree[edge_of[t][k][0]] += 1

    bfaces = T.boundary_faces()
    edge_boundary = [False] * ne
    for t, f in bfaces:
        for a, b in itertools.combinations(face_vertices(f), 2):
            edge_boundary[edge_of[t][edge_index(a, b)][0]] = True

    face_classes = []
    for t in range(n):
        for f in range(4):
            e = T.gluings[t][f]
            if e is None:
                face_classes.append(((t, f),))
            elif (t, f) < (e[0], e[1]):
                face_classes.append(((t, f), (e[0], e[1])))

    # Edges whose class is larger than a single face-pairing orbit are
    # pinched: their link is not a circle or arc.
    plain = _UF(6 * n)
    _edge_unions(T, plain, with_pins=False)
    orbits_per_class: dict[int, set] = {}
    for t in range(n):
        for k in range(6):
            orbits_per_class.setdefault(edge_of[t][k][0], set()).add(plain.find(6 * t + k)[0])
    for c in range(ne):
        if len(orbits_per_class[c]) > 1:
            problems.append(f"edge {c} is pinched from {len(orbits_per_class[c])} separate edge cycles")

    # Vertex links: triangles are tetrahedron corners, edges are corner
    # arcs in faces, vertices are edge ends.
    link_f = [0] * nv
    link_e = [0] * nv
    link_be = [0] * nv
    ends: list[set] = [set() for _ in range(nv)]
    for t in range(n):
        for v in range(4):
            vc = vertex_of[t][v]
            link_f[vc] += 1
            for w in range(4):
                if w == v:
                    continue
                c, s = edge_of[t][edge_index(v, w)]
                at_start = (v < w) == (s == 1)
                ends[vc].add((c, 0 if at_start else 1))
            for f in range(4):
                if f == v:
                    continue
                e = T.gluings[t][f]
                if e is None:
                    link_e[vc] += 1
                    link_be[vc] += 1
                elif (t, f) < (e[0], e[1]):
                    link_e[vc] += 1
    vertex_link_chi = [len(ends[i]) - link_e[i] + link_f[i] for i in range(nv)]
    vertex_link_closed = [link_be[i] == 0 for i in range(nv)]

    plainv = _vertex_unions(T, with_pins=False)
    vorbits: dict[int, set] = {}
    for t in range(n):
        for v in range(4):
            vorbits.setdefault(vertex_of[t][v], set()).add(plainv.find(4 * t + v)[0])
    for i in range(nv):
        if len(vorbits[i]) > 1:
            problems.append(f"vertex {i} is pinched from {len(vorbits[i])} separate links")
        want = 2 if vertex_link_closed[i] else 1
        if vertex_link_chi[i] != want:
            kind = "sphere" if want == 2 else "disk"
            problems.append(f"vertex {i} link has euler characteristic {vertex_link_chi[i]}, not a {kind}")

    euler = nv - ne + len(face_classes) - n
    return SkeletonReport(
        tet_count=n,
        edge_of=edge_of,
        vertex_of=vertex_of,
        edge_degree=edge_degree,
        edge_boundary=edge_boundary,
        edge_rep=edge_rep,
        vertex_link_chi=vertex_link_chi,
        vertex_link_closed=vertex_link_closed,
        face_classes=face_classes,
        boundary_faces=bfaces,
        reversed_edges=reversed_edges,
        problems=problems,
        manifold=not problems,
        euler=euler,
    )


def validate(T: Triangulation) -> SkeletonReport:
    return T.skeleton()


# boundary surgery ---------------------------------------------------------


def _boundary_edge_slots(T: Triangulation, e: int) -> list[tuple[int, int, int, int]]:
    """Occurrences (t, f, a, b) of edge class e in boundary faces, a->b along the class."""
    sk = T.skeleton()
    out = []
    for t, f in sk.boundary_faces:
        for a, b in itertools.combinations(face_vertices(f), 2):
            c, s = sk.edge_of[t][edge_index(a, b)]
            if c == e:
                out.append((t, f, a, b) if s == 1 else (t, f, b, a))
    return out


def layer_on_boundary_edge(T: Triangulation, e: int, choice: int = 0) -> Triangulation:
    """Attach a new tetrahedron over the two boundary faces meeting along edge e.

    The new tetrahedron's edge 01 goes onto e; its face 3 covers the
    lexicographically smaller boundary face, face 2 the other.  ``choice``
    selects the direction in which edge 01 runs along e.
    """
    sk = T.skeleton()
    if not 0 <= e < sk.num_edges:
        raise DomainError(f"no edge {e}")
    if not sk.edge_boundary[e]:
        raise DomainError(f"edge {e} is not in the boundary")
    occ = _boundary_edge_slots(T, e)
    faces = {(t, f) for t, f, _, _ in occ}
    if len(occ) != 2 or len(faces) != 2:
        raise DomainError(f"edge {e} does not lie in two distinct boundary triangles")
    occ.sort()
    (t1, f1, a1, b1), (t2, f2, a2, b2) = occ
    if choice:
        a1, b1, a2, b2 = b1, a1, b2, a2
    c1 = next(v for v in face_vertices(f1) if v not in (a1, b1))
    c2 = next(v for v in face_vertices(f2) if v not in (a2, b2))
    n = T.tet_count
    # new tetrahedron n: vertex 0 -> a, 1 -> b, 2 -> c1 (face 3), 3 -> c2 (face 2)
    p3 = [0] * 4
    p3[0], p3[1], p3[2], p3[3] = a1, b1, c1, f1
    p2 = [0] * 4
    p2[0], p2[1], p2[3], p2[2] = a2, b2, c2, f2
    return T.with_gluings(1, [(n, 3, t1, tuple(p3)), (n, 2, t2, tuple(p2))])


def torus_boundary(T: Triangulation) -> tuple[tuple[int, int], tuple[int, int]]:
    """The two boundary faces when the boundary is a one-vertex two-triangle torus."""
    sk = T.skeleton()
    bs = sk.boundary_summary()
    if bs["faces"] != 2 or bs["edges"] != 3 or bs["vertices"] != 1:
        raise DomainError(
            "boundary is not a one-vertex torus "
            f"({bs['faces']} faces, {bs['edges']} edges, {bs['vertices']} vertices)"
        )
    return tuple(sk.boundary_faces)  # type: ignore[return-value]


def fold(T: Triangulation, e: int) -> Triangulation:
    """Identify the two boundary triangles by the involution fixing edge e."""
    torus_boundary(T)
    occ = _boundary_edge_slots(T, e)
    if len(occ) != 2 or occ[0][:2] == occ[1][:2]:
        raise DomainError(f"edge {e} is not a boundary edge of the torus")
    occ.sort()
    (t1, f1, a1, b1), (t2, f2, a2, b2) = occ
    c1 = next(v for v in face_vertices(f1) if v not in (a1, b1))
    c2 = next(v for v in face_vertices(f2) if v not in (a2, b2))
    p = [0] * 4
    p[a1], p[b1], p[c1], p[f1] = a2, b2, c2, f2
    return T.with_gluings(0, [(t1, f1, t2, tuple(p))])


def disjoint_union(A: Triangulation, B: Triangulation) -> Triangulation:
    n = A.tet_count
    rows = list(A.gluings)
    for row in B.gluings:
        rows.append(tuple(None if x is None else (x[0] + n, x[1], x[2]) for x in row))
    pins = A.pins + tuple(((t + n, a, b), (t2 + n, c, d)) for (t, a, b), (t2, c, d) in B.pins)
    return Triangulation(A.tet_count + B.tet_count, tuple(rows), pins)


def glue_boundaries(A: Triangulation, B: Triangulation, corr, pinch: bool = False) -> Triangulation:
    """Glue boundary faces of A to boundary faces of B.

    ``corr`` lists ``((tA, fA), (tB, fB), perm)`` with perm sending the
    vertices of A's tetrahedron to those of B's.  The pairs must form a
    simplicial isomorphism between the covered parts of the boundaries.
    With ``pinch`` the map may send distinct edges of A to one edge of B
    (gluing onto a creased cell).
    """
    corr = [((a[0], a[1]), (b[0], b[1]), tuple(p)) for a, b, p in corr]
    skA, skB = A.skeleton(), B.skeleton()
    bA, bB = set(skA.boundary_faces), set(skB.boundary_faces)
    seenA, seenB = set(), set()
    for fa, fb, p in corr:
        if fa not in bA or fb not in bB:
            raise DomainError(f"{fa} or {fb} is not a boundary face")
        if fa in seenA or fb in seenB:
            raise DomainError("a boundary face appears twice in the correspondence")
        seenA.add(fa)
        seenB.add(fb)
        if sorted(p) != [0, 1, 2, 3] or p[fa[1]] != fb[1]:
            raise DomainError(f"permutation {p} does not carry face {fa} onto {fb}")
    # edges of A's boundary faces must go to edges of B consistently
    image: dict[int, tuple[int, int]] = {}
    for (ta, fa), (tb, fb), p in corr:
        for a, b in itertools.combinations(face_vertices(fa), 2):
            ca, sa = skA.edge_of[ta][edge_index(a, b)]
            cb, sb = skB.edge_of[tb][edge_index(p[a], p[b])]
            sb = sb if p[a] < p[b] else -sb
            rel = sa * sb
            if ca in image and image[ca] != (cb, rel):
                raise DomainError("correspondence is not a simplicial isomorphism of the boundaries")
            image[ca] = (cb, rel)
    if not pinch and len(set(c for c, _ in image.values())) != len(image):
        raise DomainError("correspondence identifies distinct boundary edges of the first complex")
    U = disjoint_union(A, B)
    n = A.tet_count
    return U.with_gluings(0, [(ta, fa, tb + n, p) for (ta, fa), (tb, _), p in corr])


# homology ------------------------------------------------------------------


def _invariant_factors(rows: list[list[int]]) -> list[int]:
    """Nonzero diagonal of the Smith normal form (absolute values, unsorted)."""
    M = [r[:] for r in rows if any(r)]
    if not M:
        return []
    out = []
    ncols = len(M[0])
    while M:
        # pick pivot with smallest absolute value
        best = None
        for i, r in enumerate(M):
            for j in range(ncols):
                if r[j] and (best is None or abs(r[j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        M[0], M[i] = M[i], M[0]
        for r in M:
            r[0], r[j] = r[j], r[0]
        while True:
            piv = M[0][0]
            done = True
            for r in M[1:]:
                if r[0]:
                    q = r[0] // piv
                    for k in range(ncols):
                        r[k] -= q * M[0][k]
                    if r[0]:
                        done = False
            for k in range(1, ncols):
                if M[0][k]:
                    q = M[0][k] // piv
                    for r in M:
                        r[k] -= q * r[0]
                    if M[0][k]:
                        done = False
            if done:
                break
            # move smallest nonzero in first row/column to the pivot
            cand = [(abs(M[i2][0]), i2, 0) for i2 in range(len(M)) if M[i2][0]]
            cand += [(abs(M[0][k]), 0, k) for k in range(ncols) if M[0][k]]
            _, i2, k2 = min(cand)
            if i2:
                M[0], M[i2] = M[i2], M[0]
            if k2:
                for r in M:
                    r[0], r[k2] = r[k2], r[0]
        piv = M[0][0]
        rest = [r[1:] for r in M[1:]]
        # enforce divisibility by folding a non-divisible entry into the pivot row
        bad = next(((a, b) for a, r in enumerate(rest) for b, x in enumerate(r) if x % piv), None)
        if bad is not None:
            a, _ = bad
            M[0] = [M[0][k] + M[a + 1][k] for k in range(ncols)]
            continue
        out.append(abs(piv))
        ncols -= 1
        M = [r for r in rest if any(r)]
    return out


def homology_h1(T: Triangulation) -> tuple[int, tuple[int, ...]]:
    """First homology as (free rank, torsion invariant factors)."""
    sk = T.skeleton()
    ne, nv = sk.num_edges, sk.num_vertices
    # d1: edges -> vertices
    d1 = [[0] * nv for _ in range(ne)]
    for c, (t, (a, b)) in enumerate(sk.edge_rep):
        d1[c][sk.vertex_of[t][b]] += 1
        d1[c][sk.vertex_of[t][a]] -= 1
    d2 = []
    for cls in sk.face_classes:
        t, f = cls[0]
        a, b, c = face_vertices(f)
        row = [0] * ne
        for (x, y), sgn in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
            cl, s = sk.edge_of[t][edge_index(x, y)]
            row[cl] += sgn * s
        d2.append(row)
    r1 = len(_invariant_factors(d1))
    f2 = _invariant_factors(d2)
    free = ne - r1 - len(f2)
    torsion = tuple(sorted(x for x in f2 if x > 1))
    return free, torsion


def h1_order(T: Triangulation) -> int:
    """|H1|, with 0 standing for an infinite group."""
    free, tors = homology_h1(T)
    if free:
        return 0
    out = 1
    for x in tors:
        out *= x
    return out


# isomorphism and canonical form --------------------------------------------


def _components(T: Triangulation) -> list[list[int]]:
    seen = [False] * T.tet_count
    comps = []
    for s in range(T.tet_count):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            t = stack.pop()
            comp.append(t)
            for e in T.gluings[t]:
                if e is not None and not seen[e[0]]:
                    seen[e[0]] = True
                    stack.append(e[0])
        comps.append(sorted(comp))
    return comps


def _relabel_from(T: Triangulation, start: int, perm: Perm):
    """BFS relabelling of the component of ``start``; tet ``start`` becomes 0 with vertices via perm.

    Returns (order, vertex maps) with order[i] = old tet, maps[old] = old->new vertex perm.
    """
    order = [start]
    maps = {start: perm}
    i = 0
    while i < len(order):
        t = order[i]
        i += 1
        for fn in range(4):
            f = inverse(maps[t])[fn]
            e = T.gluings[t][f]
            if e is None:
                continue
            t2, f2, g = e
            if t2 not in maps:
                # new vertex map for t2: maps[t] o g^-1
                maps[t2] = compose(maps[t], inverse(g))
                order.append(t2)
    return order, maps


def _code(T: Triangulation, order, maps) -> tuple:
    idx = {t: k for k, t in enumerate(order)}
    rows = []
    for t in order:
        m = maps[t]
        minv = inverse(m)
        row = []
        for fn in range(4):
            f = minv[fn]
            e = T.gluings[t][f]
            if e is None:
                row.append(None)
            else:
                t2, f2, g = e
                # new perm: maps[t2] o g o maps[t]^-1
                gn = compose(maps[t2], compose(g, minv))
                row.append((idx[t2], gn[fn], gn))
        rows.append(tuple(row))
    pins = []
    for (t, a, b), (t2, c, d) in T.pins:
        if t in idx and t2 in idx:
            pins.append(_norm_pin(((idx[t], maps[t][a], maps[t][b]), (idx[t2], maps[t2][c], maps[t2][d]))))
    return tuple(rows), tuple(sorted(pins))


def _code_key(code):
    rows, pins = code
    flat = []
    for row in rows:
        for x in row:
            flat.append((1, 0, 0, ()) if x is None else (0, x[0], x[1], x[2]))
    return (flat, pins)


def _canonical_component(T: Triangulation, comp: list[int]):
    best = None
    for s in comp:
        for p in _ALL_PERMS:
            order, maps = _relabel_from(T, s, p)
            code = _code(T, order, maps)
            key = _code_key(code)
            if best is None or key < best[0]:
                best = (key, code)
    return best[1]


def canonical_form(T: Triangulation) -> Triangulation:
    """Lowest-lexicographic relabelling (per component, components sorted)."""
    codes = sorted((_canonical_component(T, c) for c in _components(T)), key=_code_key)
    rows, pins, offset = [], [], 0
    for crow, cpins in codes:
        for row in crow:
            rows.append(tuple(None if x is None else (x[0] + offset, x[1], x[2]) for x in row))
        for (t, a, b), (t2, c, d) in cpins:
            pins.append(((t + offset, a, b), (t2 + offset, c, d)))
        offset += len(crow)
    return Triangulation(T.tet_count, tuple(rows), tuple(pins))


def isomorphic(A: Triangulation, B: Triangulation, limit: int | None = None) -> bool:
    lim = max_tets() if limit is None else limit
    if max(A.tet_count, B.tet_count) > lim:
        raise SizeGuardError(
            f"isomorphism search is limited to {lim} tetrahedra (set LENSLAB_MAX_TETS to raise it)"
        )
    if A.tet_count != B.tet_count:
        return False
    ca = sorted((_canonical_component(A, c) for c in _components(A)), key=_code_key)
    cb = sorted((_canonical_component(B, c) for c in _components(B)), key=_code_key)
    return ca == cb


# text format -----------------------------------------------------------------


def _redundant_pins(T: Triangulation) -> bool:
    if not T.pins:
        return True
    plain = Triangulation(T.tet_count, T.gluings)
    sk = plain.skeleton()
    for (t, a, b), (t2, c, d) in T.pins:
        c1, s1 = sk.edge_of[t][edge_index(a, b)]
        c2, s2 = sk.edge_of[t2][edge_index(c, d)]
        s1 = s1 if a < b else -s1
        s2 = s2 if c < d else -s2
        if c1 != c2 or s1 != s2:
            return False
    return True


def drop_redundant_pins(T: Triangulation) -> Triangulation:
    if T.pins and _redundant_pins(T):
        return Triangulation(T.tet_count, T.gluings)
    return T


def serialize(T: Triangulation, canonical: bool = True) -> str:
    if T.pins:
        if not _redundant_pins(T):
            raise DomainError("complex has edge identifications not induced by face pairings; no .tri form")
        T = Triangulation(T.tet_count, T.gluings)
    if canonical:
        T = canonical_form(T)
    lines = [f"tets {T.tet_count}"]
    for t, f, t2, f2, p in T.gluing_records():
        lines.append(f"glue {t} {f} {t2} {f2} {''.join(str(x) for x in p)}")
    return "\n".join(lines) + "\n"


def parse(text: str) -> Triangulation:
    n = None
    table: list[list] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "tets" or not parts[1].isdigit():
                raise ParseError("expected 'tets N' header", lineno)
            n = int(parts[1])
            table = [[None] * 4 for _ in range(n)]
            continue
        if parts[0] != "glue" or len(parts) != 6:
            raise ParseError(f"expected 'glue t f t2 f2 perm', got {line!r}", lineno)
        try:
            t, f, t2, f2 = (int(x) for x in parts[1:5])
        except ValueError:
            raise ParseError("tetrahedron and face indices must be integers", lineno) from None
        ps = parts[5]
        if len(ps) != 4 or sorted(ps) != ["0", "1", "2", "3"]:
            raise ParseError(f"{ps!r} is not a permutation of 0123", lineno)
        p = tuple(int(ch) for ch in ps)
        if not (0 <= t < n and 0 <= t2 < n and 0 <= f < 4 and 0 <= f2 < 4):
            raise ParseError("index out of range", lineno)
        if p[f] != f2:
            raise ParseError(f"permutation sends {f} to {p[f]}, not to face {f2}", lineno)
        if (t, f) == (t2, f2):
            raise ParseError("face glued to itself", lineno)
        if table[t][f] is not None or table[t2][f2] is not None:
            raise ParseError(f"face ({t},{f}) or ({t2},{f2}) already glued (not monogamous)", lineno)
        table[t][f] = (t2, f2, p)
        table[t2][f2] = (t, f, inverse(p))
    if n is None:
        raise ParseError("empty input")
    return Triangulation(n, tuple(tuple(r) for r in table))
