from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from lenslab.errors import DomainError
from lenslab.lst import (
    THICK,
    LayeredPath,
    build_from_path,
    build_minimal,
    edge_line,
    edge_table,
    is_nearly_minimal,
    layer,
    materialize,
    materialize_labeled,
    open_at_thick_edge,
)
from lenslab.normal import connected_surfaces
from lenslab.slope import LVertex, push_through
from lenslab.tri import validate

V = LVertex


@st.composite
def fractions(draw, top=60):
    q = draw(st.integers(2, top))
    p = draw(st.integers(1, q - 1).filter(lambda p: gcd(p, q) == 1))
    return p, q


def test_one_tet_solid_torus():
    lp = build_minimal(1, 2)
    assert lp.tet_count == 1
    assert sorted(lp.meridian) == [1, 2, 3]


def test_moebius_band_alone():
    lp = build_minimal(1, 1)
    assert lp.tet_count == 0 and lp.degenerate


def test_two_sevenths_has_four_tets():
    lp = build_minimal(2, 7)
    assert lp.tet_count == 4
    assert str(lp) == "2/7,2/5,2/3,1/2,1/1"


def test_build_minimal_rejects_non_coprime():
    with pytest.raises(DomainError):
        build_minimal(2, 4)


def test_path_through_zero_is_creased():
    lp = build_from_path([V(0, 1), V(1, 1)])
    assert lp.creased and lp.degenerate


def test_path_with_a_loop_repeats_a_slope():
    lp = build_from_path([V(1, 2), V(1, 1), V(1, 2), V(1, 1)])
    assert lp.tet_count == 3
    ok, witness = is_nearly_minimal(lp)
    assert not ok and len(witness) == 2


def test_path_must_follow_lgraph_edges():
    with pytest.raises(DomainError):
        build_from_path([V(2, 7), V(1, 2), V(1, 1)])
    with pytest.raises(DomainError):
        build_from_path([V(1, 2)])


def test_layer_examples():
    one = build_minimal(1, 2)
    three = one.meridian.entries.index(3)
    ext = layer(one, three)
    assert sorted(ext.meridian) == [1, 1, 2] and ext.tet_count == 2
    assert ext.fraction == V(1, 1)
    onto_one = layer(one, one.meridian.entries.index(1))
    assert sorted(onto_one.meridian) == [2, 3, 5]
    assert layer(LayeredPath(), 2).meridian.entries == (1, 1, 0)


def test_edge_table_of_one_tet():
    rows = edge_table(build_minimal(1, 2))
    assert len(rows) == 3
    assert sorted(e.meridian_count for e in rows) == [1, 2, 3]
    assert all(e.in_boundary for e in rows)
    thick = [e for e in rows if e.kind == "thick"]
    assert len(thick) == 1 and thick[0].meridian_count == 1 and thick[0].id == THICK


def test_univalent_edge_is_the_largest():
    rows = edge_table(build_minimal(2, 7))
    uni = [e for e in rows if e.univalent]
    assert len(uni) == 1
    assert uni[0].meridian_count == 9 == max(e.meridian_count for e in rows)


def test_creased_univalent_edge_count_zero():
    rows = edge_table(build_from_path([V(0, 1), V(1, 1)]))
    assert [e.meridian_count for e in rows if e.univalent] == [0]


def test_edge_line_format():
    line = edge_line(edge_table(build_minimal(1, 2))[0])
    assert line.startswith("edge 0.0 meridian=1 kind=thick univalent=0 slope={")


def test_zero_one_extension_is_not_nearly_minimal():
    lp = build_from_path([V(0, 1), V(0, 1), V(1, 1)])
    ok, witness = is_nearly_minimal(lp)
    assert not ok
    assert witness[0].meridian_count == 0


def test_detour_through_three_quarters_is_nearly_minimal():
    lp = build_from_path([V(1, 6), V(1, 5), V(1, 4), V(1, 3), V(3, 4), V(1, 3), V(1, 2), V(1, 1)])
    assert lp.tet_count == build_minimal(1, 6).tet_count + 2
    assert is_nearly_minimal(lp)[0]


@pytest.mark.parametrize("n", range(3, 8))
def test_openings_at_thick_edges(n):
    paths = {open_at_thick_edge(k, n).moves for k in range(2, n)}
    assert len(paths) == n - 2
    for k in range(2, n):
        lp = open_at_thick_edge(k, n)
        assert lp.fraction == V(1, n)
        assert lp.tet_count == n + 1
        assert is_nearly_minimal(lp)[0]


def test_opening_range_is_checked():
    with pytest.raises(DomainError):
        open_at_thick_edge(1, 4)


def test_materialize_one_tet():
    sk = validate(materialize(build_minimal(1, 2)))
    assert sk.manifold
    assert (sk.tet_count, sk.num_vertices, sk.num_edges, len(sk.boundary_faces)) == (1, 1, 3, 2)


def test_materialize_two_sevenths():
    sk = validate(materialize(build_minimal(2, 7)))
    assert (sk.tet_count, sk.num_edges) == (4, 6)


def test_creased_cell_is_not_a_manifold():
    sk = validate(materialize(build_from_path([V(0, 1), V(1, 1)])))
    assert sk.tet_count == 1 and not sk.manifold


def test_moebius_band_cannot_be_materialized():
    with pytest.raises(DomainError):
        materialize(LayeredPath())


@given(fractions())
def test_levels_follow_push_through(pq):
    lp = build_minimal(*pq)
    for k, m in enumerate(lp.moves):
        assert lp.levels[k + 1] == push_through(lp.levels[k], m)
    assert lp.fraction == V(*pq)
    assert [str(v) for v in lp.fractions()] == str(lp).split(",")


@given(fractions())
def test_minimal_paths_have_distinct_thin_slopes(pq):
    lp = build_minimal(*pq)
    thin = [e.final_slope for e in lp.edges if e.kind == "thin"]
    assert len(set(thin)) == len(thin)
    assert sum(e.kind == "thick" for e in lp.edges) == 1


@given(fractions())
def test_boundary_edge_slopes(pq):
    lp = build_minimal(*pq)
    for e in lp.edges:
        for s in e.boundary_slots:
            expect = tuple(0 if k == s else 1 for k in range(3))
            assert e.final_slope.entries == expect


@given(fractions(top=40))
@settings(max_examples=40, deadline=None)
def test_materialized_counts(pq):
    lp = build_minimal(*pq)
    sk = validate(materialize(lp))
    assert sk.manifold
    assert sk.tet_count == lp.tet_count
    assert sk.num_edges == lp.tet_count + 2
    assert sk.num_vertices == 1


@pytest.mark.parametrize("pq", [(1, 2), (1, 3), (2, 5), (2, 7), (3, 5)])
def test_unique_meridional_disk(pq):
    lp = build_minimal(*pq)
    M = materialize_labeled(lp)
    merid = lp.meridian.entries
    disks = [
        c
        for c in connected_surfaces(M.tri, 6, slot_classes=M.slot_classes)
        if c.euler == 1 and c.boundary == (merid,)
    ]
    assert len(disks) == 1
