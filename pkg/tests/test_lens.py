from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from lenslab.errors import DomainError
from lenslab.lens import (
    FoldedLens,
    GluingSpec,
    LensSpace,
    boundary_frame,
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
from lenslab.lst import build_minimal, edge_table, materialize, materialize_labeled, open_at_thick_edge
from lenslab.slope import SlopeTriple, push_through
from lenslab.tri import h1_order, homology_h1, validate

S = SlopeTriple.of


def homeomorphic(X, a, b):
    """Brute-force lens classification: b = +-a^{+-1} mod X."""
    if X in (1, 2):
        return True
    inv = pow(a, -1, X)
    return b % X in {a % X, -a % X, inv, -inv % X}


def slopes_up_to(top):
    out, frontier = set(), [S(1, 1, 2), S(1, 2, 1), S(2, 1, 1)]
    while frontier:
        t = frontier.pop()
        if t in out or max(t.entries) > top:
            continue
        out.add(t)
        frontier.extend(push_through(t, i) for i in range(3))
    return sorted(out, key=lambda t: t.entries)


@st.composite
def coprime(draw, top=500):
    X = draw(st.integers(2, top))
    Y = draw(st.integers(1, X - 1).filter(lambda y: gcd(X, y) == 1))
    return X, Y


def test_canonical_form_examples():
    assert canonicalize(13, 9) == canonicalize(13, 4) == canonicalize(13, 3)
    assert str(canonicalize(13, 4)) == "L(13,3)"
    assert str(canonicalize(42, 19)) == str(canonicalize(42, 11))
    assert canonicalize(2, 1).name == "RP^3"
    assert str(canonicalize(1, 0)) == "L(1,0)"


def test_strict_mode_uses_sign_only():
    assert canonicalize(13, 9, strict=True) == canonicalize(13, 4, strict=True)
    assert str(canonicalize(13, 4, strict=True)) == "L(13,4)"
    assert not equivalent(canonicalize(13, 4), canonicalize(13, 3), strict=True)
    assert equivalent(canonicalize(13, 4), canonicalize(13, 3))


def test_canonicalize_refuses_bad_input():
    for X, Y in ((4, 2), (-3, 1), (0, 2)):
        with pytest.raises(DomainError):
            canonicalize(X, Y)


@given(coprime(top=200))
def test_canonical_form_is_the_homeomorphism_class(xy):
    X, Y = xy
    L = canonicalize(X, Y)
    assert homeomorphic(X, Y, L.Y)
    for Z in range(1, X):
        if gcd(X, Z) == 1 and homeomorphic(X, Y, Z):
            assert L.Y <= Z


def test_fold_one_tet():
    lp = build_minimal(1, 2)
    by_count = {lp.meridian[s]: fold_symbolic(lp, s) for s in range(3)}
    assert by_count[3] == canonicalize(1, 0)
    assert by_count[2] == canonicalize(4, 1)
    assert by_count[1] == canonicalize(5, 2)


def test_fold_four_five_nine():
    on_five = fold_triple(S(4, 5, 9), 1)
    assert on_five.raw() == "L(13,4)" and on_five == canonicalize(13, 9)
    on_four = fold_triple(S(4, 5, 9), 0)
    assert on_four.raw() == "L(14,5)" and str(on_four) == "L(14,3)"


def test_fold_symbolic_slot_range():
    with pytest.raises(ValueError):
        fold_symbolic(build_minimal(1, 2), 3)


def test_identify_examples():
    L = identify_gluing(GluingSpec(S(9, 7, 2), S(5, 3, 8)))
    assert L.raw() == "L(62,27)" and str(L) == "L(62,23)"
    M = identify_gluing(GluingSpec(S(9, 7, 2), S(3, 7, 4)))
    assert M.raw() == "L(42,19)" and M == canonicalize(42, 11)


def test_identify_meridian_to_meridian():
    L = identify_gluing(GluingSpec(S(1, 1, 2), S(1, 1, 2)))
    assert (L.X, L.Y) == (0, 1)


def test_identify_rejects_unknown_strategy():
    with pytest.raises(ValueError):
        identify_gluing(GluingSpec(S(1, 1, 2), S(1, 2, 3)), "smallest")


def test_glue_layered_two_sevenths_to_three_fifths():
    T = glue_layered(build_minimal(2, 7), build_minimal(3, 5))
    assert validate(T).manifold
    assert homology_h1(T) == (0, (62,))


@given(st.sampled_from(slopes_up_to(40)), st.sampled_from(slopes_up_to(40)), st.permutations(range(3)))
@settings(max_examples=200)
def test_identify_strategies_and_sides_agree(A, B, pair):
    g = GluingSpec(A, B, tuple(pair))
    try:
        first = identify_gluing(g, "first")
    except DomainError:
        return
    assert identify_gluing(g, "larger") == first
    assert identify_gluing(g.swapped()) == first


@pytest.mark.parametrize("pq", [(1, 2), (2, 5), (3, 7)])
def test_identify_matches_homology_of_glued_tori(pq):
    A = build_minimal(*pq)
    for B in (build_minimal(1, 2), build_minimal(2, 5)):
        for pair in ((0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1)):
            L = identify_gluing(GluingSpec(A.meridian, B.meridian, pair))
            assert h1_order(glue_layered(A, B, pair)) == L.X


def test_build_lens_sweep():
    for X in range(2, 201):
        for Y in range(1, X):
            if gcd(X, Y) != 1:
                continue
            desc = build_lens(X, Y)
            assert desc.lens == canonicalize(X, Y), (X, Y)


def test_build_lens_small_cases():
    assert build_lens(1, 0).tet_count == 1
    assert build_lens(0, 1).lens.X == 0
    assert build_lens(2, 1).tet_count == 2
    assert build_lens(5, 2).tet_count == 1
    L = build_lens(13, 4)
    assert sorted(L.path.meridian) == [4, 5, 9] and L.path.meridian[L.fold_slot] == 5
    with pytest.raises(DomainError):
        build_lens(6, 4)


@pytest.mark.parametrize("X,Y", [(3, 1), (5, 2), (7, 2), (13, 4), (12, 5), (29, 12)])
def test_materialized_lens_homology(X, Y):
    T = closed_complex(build_lens(X, Y))
    sk = validate(T)
    assert sk.manifold and sk.num_vertices == 1 and not sk.boundary_faces
    assert homology_h1(T) == (0, (X,))


def test_reverse_examples():
    assert canonicalize(25, reverse_description(build_lens(25, 11)).lens.reading, strict=True) == canonicalize(25, 9, strict=True)
    assert canonicalize(13, reverse_description(build_lens(13, 8)).lens.reading, strict=True) == canonicalize(13, 5, strict=True)


@given(coprime())
@settings(max_examples=100)
def test_reversed_view_reads_the_inverse(xy):
    X, Y = xy
    desc = build_lens(X, Y)
    rev = reverse_description(desc)
    assert rev.path.tet_count == desc.path.tet_count
    y, y2 = desc.lens.reading, rev.lens.reading
    assert (y * y2) % X in (1, X - 1)
    y3 = reverse_description(rev).lens.reading
    assert (y3 - y) % X == 0 or (y3 + y) % X == 0


def test_even_edge_count_examples():
    assert even_edge_count(16, 7) == 2
    assert all(even_edge_count(2, q) == 1 for q in range(1, 100, 2))
    assert all(even_edge_count(2 * k, 1) == k for k in range(1, 21))
    with pytest.raises(DomainError):
        even_edge_count(4, 6)


@pytest.mark.parametrize("q", range(3, 60))
def test_even_edge_count_matches_edge_table(q):
    for p in range(1, q):
        if gcd(p, q) != 1:
            continue
        rows = edge_table(build_minimal(p, q))
        evens = sum(1 for e in rows if e.meridian_count % 2 == 0)
        assert even_edge_count(p, q) == evens, (p, q)


def test_genus_examples():
    assert nonorientable_genus(30, 7).genus == 3
    assert str(nonorientable_genus(30, 7)) == "U_3 (h=3)"
    assert nonorientable_genus(4, 1).genus == 2
    assert nonorientable_genus(2, 1).genus == 1
    assert nonorientable_genus(7, 2).genus is None
    assert nonorientable_genus(0, 1).genus is None


def test_klein_bottle_family():
    found = {
        canonicalize(X, Y)
        for X in range(4, 101, 2)
        for Y in range(1, X)
        if gcd(X, Y) == 1 and nonorientable_genus(X, Y).genus == 2
    }
    assert found == {canonicalize(4 * n, 2 * n - 1) for n in range(1, 26)}


def test_efficiency_examples():
    assert not is_zero_efficient(build_lens(2, 1))
    assert is_zero_efficient(build_lens(5, 2))
    assert is_zero_efficient(build_lens(7, 2))
    good = build_lens(3, 1)
    bad = next(d for d in (FoldedLens(good.path, s) for s in range(3)) if d.folds_univalent)
    assert is_zero_efficient(good) and not is_zero_efficient(bad)


def test_efficiency_refuses_s3_and_s2xs1():
    for desc in (build_lens(1, 0), build_lens(0, 1)):
        with pytest.raises(DomainError):
            is_zero_efficient(desc)
        with pytest.raises(DomainError):
            is_one_efficient(desc)


@pytest.mark.parametrize("n", range(3, 9))
def test_thick_edge_openings_are_one_efficient(n):
    for k in range(2, n):
        lp = open_at_thick_edge(k, n)
        desc = FoldedLens(lp, lp.meridian.entries.index(1))
        assert is_zero_efficient(desc) and is_one_efficient(desc)


def test_one_efficient_implies_zero_efficient():
    for X in range(3, 40):
        for Y in range(1, X):
            if gcd(X, Y) == 1:
                d = build_lens(X, Y)
                if is_one_efficient(d):
                    assert is_zero_efficient(d)


def test_dehn_fill_one_tet_along_meridian_gives_s2xs1():
    lp = build_minimal(1, 2)
    M = materialize_labeled(lp)
    _, _, classes = boundary_frame(M.tri)
    merid = SlopeTriple(tuple(lp.meridian[M.slot_classes.index(c)] for c in classes))
    assert homology_h1(dehn_fill(M.tri, 0, merid)) == (1, ())


@pytest.mark.parametrize("pq", [(1, 2), (2, 7), (3, 5)])
def test_dehn_fill_matches_symbolic_gluing(pq):
    lp = build_minimal(*pq)
    M = materialize_labeled(lp)
    _, _, classes = boundary_frame(M.tri)
    merid = SlopeTriple(tuple(lp.meridian[M.slot_classes.index(c)] for c in classes))
    for alpha in slopes_up_to(13):
        R = dehn_fill(M.tri, 0, alpha)
        sk = validate(R)
        assert not sk.boundary_faces and sk.num_vertices == 1
        assert h1_order(R) == identify_gluing(GluingSpec(merid, alpha)).X, alpha


def test_dehn_fill_refusals():
    T = materialize(build_minimal(1, 2))
    with pytest.raises(DomainError):
        dehn_fill(T, 0, SlopeTriple((2, 4, 6)))
    with pytest.raises(DomainError):
        dehn_fill(T, 1, S(1, 1, 2))
    with pytest.raises(DomainError):
        dehn_fill(closed_complex(build_lens(5, 2)), 0, S(1, 1, 2))


def test_lens_space_raw_reading():
    assert LensSpace(62, 23, 27).raw() == "L(62,27)"
