"""Worked examples with known answers, run by ``lenslab verify paper-examples``.

Each fixture is a name and a zero-argument check returning True on success.
Everything is built in code so the suite needs no data files.
"""

from __future__ import annotations

from collections import Counter
from math import gcd

from .lens import (
    FoldedLens,
    GluingSpec,
    build_lens,
    canonicalize,
    closed_complex,
    dehn_fill,
    equivalent,
    even_edge_count,
    fold_symbolic,
    fold_triple,
    glue_layered,
    identify_gluing,
    is_one_efficient,
    is_zero_efficient,
    nonorientable_genus,
    reverse_description,
)
from .lst import (
    LayeredPath,
    build_from_path,
    build_minimal,
    edge_table,
    is_nearly_minimal,
    layer,
    materialize,
    materialize_labeled,
    open_at_thick_edge,
)
from .normal import (
    classify,
    connected_surfaces,
    enumerate_vectors,
    find_nonvertexlinking_sphere,
    matching_equations,
)
from .slope import LVertex, SlopeTriple, canonical_fraction, lgraph_minimal_path, lgraph_neighbors, push_through
from .tri import h1_order, homology_h1, isomorphic, layer_on_boundary_edge, validate

S = SlopeTriple.of
V = LVertex


def _one_tet() -> LayeredPath:
    return build_minimal(1, 2)


def _fold_on_count(lp: LayeredPath, count: int) -> FoldedLens:
    return FoldedLens(lp, lp.meridian.entries.index(count))


def _h1_orders_of_one_tet_folds():
    lp = _one_tet()
    return [h1_order(closed_complex(_fold_on_count(lp, c))) for c in (1, 2, 3)]


def _l31_pair():
    good = build_lens(3, 1)
    bad = next(d for d in (FoldedLens(good.path, s) for s in range(3)) if d.folds_univalent)
    return good, bad


def _creased() -> LayeredPath:
    return build_from_path([V(0, 1), V(1, 1)])


def _two_tet_rp3() -> FoldedLens:
    return build_lens(2, 1)


def _one_tet_equations_match() -> bool:
    # x1..x4 are triangles T2, T1, T3, T0 and y1..y3 quads Q1, Q2, Q0
    T0, T1, T2, T3, Q0, Q1, Q2 = range(7)
    expected = {
        (frozenset((T2, Q0)), frozenset((T1, Q2))),
        (frozenset((T1, Q1)), frozenset((T0, Q1))),
        (frozenset((T0, Q2)), frozenset((T3, Q0))),
    }
    expected = {frozenset(e) for e in expected}
    got = {frozenset((frozenset(l), frozenset(r))) for l, r in matching_equations(materialize(_one_tet()))}
    return got == expected


def _minimal_nearly_minimal() -> bool:
    for q in range(2, 25):
        for p in range(1, q):
            if gcd(p, q) == 1 and not is_nearly_minimal(build_minimal(p, q))[0]:
                return False
    return True


def _zero_one_not_nearly_minimal() -> bool:
    ok, witness = is_nearly_minimal(build_lens(2, 1).path)
    return not ok and len(witness) == 1 and witness[0].meridian_count == 0


def _one_tet_surfaces():
    lp = _one_tet()
    M = materialize_labeled(lp)
    return Counter(classify(lp, c, M.tri) for c in connected_surfaces(M.tri, 2, slot_classes=M.slot_classes))


FIXTURES = [
    ("slope: (1,2,3) names 1/2", lambda: canonical_fraction(S(1, 2, 3)) == V(1, 2)),
    ("slope: {3,8,11} through 11 is {3,8,5}", lambda: push_through(S(3, 8, 11), 2) == S(3, 8, 5)),
    ("slope: {3,8,11} through 3 is {19,8,11}", lambda: push_through(S(3, 8, 11), 0) == S(19, 8, 11)),
    ("slope: neighbours of 1/2", lambda: Counter(lgraph_neighbors(V(1, 2))) == Counter([V(1, 3), V(2, 3), V(1, 1)])),
    ("slope: loop at 0/1", lambda: V(0, 1) in lgraph_neighbors(V(0, 1))),
    ("slope: path from 1/2", lambda: lgraph_minimal_path(V(1, 2)) == [V(1, 2), V(1, 1)]),
    ("slope: 2/7 needs 4 layerings", lambda: len(lgraph_minimal_path(V(2, 7))) - 1 == 4),
    ("lst: one-tet solid torus", lambda: _one_tet().tet_count == 1 and sorted(_one_tet().meridian) == [1, 2, 3]),
    ("lst: 1/1 is the bare Moebius band", lambda: build_minimal(1, 1).tet_count == 0 and build_minimal(1, 1).degenerate),
    ("lst: 0/1 path gives the creased cell", lambda: _creased().creased and _creased().degenerate),
    (
        "lst: 1/2,1/1,1/2,1/1 repeats a slope",
        lambda: not is_nearly_minimal(build_from_path([V(1, 2), V(1, 1), V(1, 2), V(1, 1)]))[0],
    ),
    (
        "lst: layering the one-tet on 3 extends 1/1",
        lambda: sorted(layer(_one_tet(), 0).meridian) == [1, 1, 2] and layer(_one_tet(), 0).tet_count == 2,
    ),
    ("lst: Moebius layered on 2 is {1,1,0}", lambda: sorted(layer(LayeredPath(), 2).meridian) == [0, 1, 1]),
    (
        "lst: one-tet edge table",
        lambda: sorted(e.meridian_count for e in edge_table(_one_tet())) == [1, 2, 3]
        and all(e.in_boundary for e in edge_table(_one_tet()))
        and next(e for e in edge_table(_one_tet()) if e.kind == "thick").meridian_count == 1,
    ),
    (
        "lst: 2/7 univalent edge meets the disk 9 times",
        lambda: next(e for e in edge_table(build_minimal(2, 7)) if e.univalent).meridian_count == 9,
    ),
    ("lst: creased univalent edge misses the disk", lambda: next(e for e in edge_table(_creased()) if e.univalent).meridian_count == 0),
    ("lst: minimal is nearly-minimal", _minimal_nearly_minimal),
    ("lst: 0/1 extension is not nearly-minimal", _zero_one_not_nearly_minimal),
    (
        "lst: 1/6 with a 3/4 detour is nearly-minimal",
        lambda: is_nearly_minimal(build_from_path([V(1, 6), V(1, 5), V(1, 4), V(1, 3), V(3, 4), V(1, 3), V(1, 2), V(1, 1)]))[0],
    ),
    (
        "tri: one-tet solid torus skeleton",
        lambda: (lambda sk: sk.manifold and sk.num_vertices == 1 and sk.num_edges == 3 and len(sk.boundary_faces) == 2)(
            validate(materialize(_one_tet()))
        ),
    ),
    ("tri: creased cell is not a manifold", lambda: not validate(materialize(_creased())).manifold),
    (
        "tri: one-tet folded on its sum edge is S^3",
        lambda: (lambda T: validate(T).closed and validate(T).num_vertices == 1 and h1_order(T) == 1)(closed_complex(_fold_on_count(_one_tet(), 3))),
    ),
    ("tri: 2/7 glued to 3/5 has |H1| = 62", lambda: h1_order(glue_layered(build_minimal(2, 7), build_minimal(3, 5))) == 62),
    ("tri: one-tet folds have |H1| 5, 4, 1", lambda: _h1_orders_of_one_tet_folds() == [5, 4, 1]),
    ("tri: S^2 x S^1 has H1 = Z", lambda: homology_h1(closed_complex(build_lens(0, 1))) == (1, ())),
    ("tri: the two L(3,1) are not isomorphic", lambda: not isomorphic(*(closed_complex(d) for d in _l31_pair()))),
    (
        "tri: attachment choices are isomorphic",
        lambda: all(
            isomorphic(layer_on_boundary_edge(materialize(_one_tet()), e, 0), layer_on_boundary_edge(materialize(_one_tet()), e, 1))
            for e in range(3)
        ),
    ),
    ("lens: one-tet fold on 2 is L(4,1)", lambda: fold_symbolic(_one_tet(), _one_tet().meridian.entries.index(2)) == canonicalize(4, 1)),
    (
        "lens: {4,5,9} fold on 5 is L(13,4) = L(13,9)",
        lambda: fold_triple(S(4, 5, 9), 1).reading == 4 and equivalent(fold_triple(S(4, 5, 9), 1), canonicalize(13, 9)),
    ),
    ("lens: {4,5,9} fold on 4 is L(14,5)", lambda: fold_triple(S(4, 5, 9), 0).raw() == "L(14,5)"),
    ("lens: {9,7,2}<->{5,3,8} is L(62,27)", lambda: identify_gluing(GluingSpec(S(9, 7, 2), S(5, 3, 8))).raw() == "L(62,27)"),
    (
        "lens: {9,7,2}<->{3,7,4} is L(42,19) = L(42,11)",
        lambda: identify_gluing(GluingSpec(S(9, 7, 2), S(3, 7, 4))).raw() == "L(42,19)"
        and equivalent(canonicalize(42, 19), canonicalize(42, 11)),
    ),
    ("lens: {1,1,2}<->{1,1,2} is L(0,1)", lambda: identify_gluing(GluingSpec(S(1, 1, 2), S(1, 1, 2))).X == 0),
    ("lens: L(13,9) = L(13,4) under sign", lambda: canonicalize(13, 9, strict=True) == canonicalize(13, 4, strict=True)),
    ("lens: L(25,11) = L(25,9)", lambda: equivalent(canonicalize(25, 11), canonicalize(25, 9))),
    (
        "lens: L(13,4) folds {5,4,9} on 5",
        lambda: sorted(build_lens(13, 4).path.meridian) == [4, 5, 9] and build_lens(13, 4).path.meridian[build_lens(13, 4).fold_slot] == 5,
    ),
    (
        "lens: RP^3 folds {0,1,1} on 0",
        lambda: sorted(_two_tet_rp3().path.meridian) == [0, 1, 1] and _two_tet_rp3().path.meridian[_two_tet_rp3().fold_slot] == 0,
    ),
    (
        "lens: L(5,2) is the one-tet folded on 1",
        lambda: build_lens(5, 2).tet_count == 1 and build_lens(5, 2).path.meridian[build_lens(5, 2).fold_slot] == 1,
    ),
    (
        "lens: reversed L(25,11) reads L(25,9)",
        lambda: canonicalize(25, reverse_description(build_lens(25, 11)).lens.reading, strict=True) == canonicalize(25, 9, strict=True),
    ),
    (
        "lens: reversed L(13,8) reads L(13,5)",
        lambda: canonicalize(13, reverse_description(build_lens(13, 8)).lens.reading, strict=True) == canonicalize(13, 5, strict=True),
    ),
    ("lens: e(16,7) = 2", lambda: even_edge_count(16, 7) == 2),
    ("lens: e(2,7) = 1", lambda: even_edge_count(2, 7) == 1),
    ("lens: e(2k,1) = k", lambda: all(even_edge_count(2 * k, 1) == k for k in range(1, 21))),
    ("lens: L(30,7) contains U_3", lambda: nonorientable_genus(30, 7).genus == 3),
    ("lens: L(4,1) contains a Klein bottle", lambda: nonorientable_genus(4, 1).genus == 2),
    ("lens: two-tet RP^3 is not 0-efficient", lambda: not is_zero_efficient(_two_tet_rp3())),
    (
        "lens: 1/n opened at a thick edge is 1-efficient",
        lambda: all(
            is_nearly_minimal(open_at_thick_edge(k, n))[0] and is_one_efficient(_fold_on_count(open_at_thick_edge(k, n), 1))
            for n in range(3, 9)
            for k in range(2, n)
        ),
    ),
    (
        "lens: filling along {0,1,1} pinches to one vertex",
        lambda: validate(dehn_fill(materialize(_one_tet()), 0, S(0, 1, 1))).num_vertices == 1,
    ),
    (
        "lens: filling along {1,1,2} folds",
        lambda: dehn_fill(materialize(_one_tet()), 0, S(1, 1, 2)).tet_count == 1,
    ),
    ("normal: one-tet matching equations", _one_tet_equations_match),
    (
        "normal: one-tet surfaces at bound 2",
        lambda: {"vertex-linking disk", "meridional disk", "edge-linking annulus"} <= set(_one_tet_surfaces())
        and any(k.startswith("nonorientable genus 1") for k in _one_tet_surfaces()),
    ),
    ("normal: octagon in one-tet S^3", lambda: bool(enumerate_vectors(closed_complex(build_lens(1, 0)), 2, octagons=True))),
    ("normal: sphere in two-tet RP^3", lambda: find_nonvertexlinking_sphere(closed_complex(_two_tet_rp3()), 4) is not None),
    ("normal: sphere in the bad L(3,1)", lambda: find_nonvertexlinking_sphere(closed_complex(_l31_pair()[1]), 4) is not None),
]


def run_all():
    """Yield (name, passed, error message or None) for every fixture."""
    for name, check in FIXTURES:
        try:
            ok = bool(check())
            yield name, ok, None
        except Exception as exc:  # reported, not raised: the suite keeps going
            yield name, False, f"{type(exc).__name__}: {exc}"
