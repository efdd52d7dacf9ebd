from collections import Counter, deque

import pytest
from hypothesis import given, strategies as st

from lenslab.slope import (
    LVertex,
    SlopeTriple,
    canonical_fraction,
    continued_fraction,
    lgraph_minimal_path,
    lgraph_neighbors,
    push_through,
    same_unordered,
)

S = SlopeTriple.of


def subtraction_path(p, q):
    """Independent oracle: walk p/q down to 1/1 by repeated subtraction."""
    out = [(p, q)]
    while (p, q) != (1, 1):
        p, q = sorted((p, q - p))
        out.append((p, q))
    return out


@st.composite
def triples(draw, top=500):
    a = draw(st.integers(0, top))
    b = draw(st.integers(0, top))
    k = draw(st.integers(0, 2))
    e = [a, b]
    e.insert(k, a + b)
    return SlopeTriple(tuple(e))


@st.composite
def vertices(draw, top=300):
    q = draw(st.integers(1, top))
    p = draw(st.integers(0, q))
    from math import gcd

    g = gcd(p, q)
    return LVertex(p // g, q // g)


def test_canonical_fraction_examples():
    assert canonical_fraction(S(1, 2, 3)) == LVertex(1, 2)
    assert canonical_fraction(SlopeTriple((0, 1, 1), 1)) == LVertex(0, 1)
    assert canonical_fraction(S(7, 16, 9)) == LVertex(7, 9)


def test_triple_needs_a_sum_entry():
    with pytest.raises(ValueError):
        S(2, 3, 4)


def test_slope_constructor_rejects_non_coprime_legs():
    with pytest.raises(ValueError):
        SlopeTriple.slope(2, 4, 6)


def test_degenerate_triples_keep_their_sum_index():
    t = SlopeTriple((1, 1, 0), 0)
    assert t.sum_index == 0
    assert SlopeTriple((1, 1, 0), 1).sum_index == 1
    with pytest.raises(ValueError):
        SlopeTriple((1, 1, 0), 2)


def test_push_through_examples():
    assert push_through(S(3, 8, 11), 2) == S(3, 8, 5)
    assert push_through(S(3, 8, 11), 0) == S(19, 8, 11)
    assert push_through(SlopeTriple((0, 1, 1), 2), 0) == S(2, 1, 1)


def test_parse_forms():
    assert SlopeTriple.parse("{9,7,2}") == S(9, 7, 2)
    assert SlopeTriple.parse("(1, 2, 3)") == S(1, 2, 3)
    assert LVertex.parse("2/7") == LVertex(2, 7)


def test_neighbours_of_one_half():
    assert Counter(lgraph_neighbors(LVertex(1, 2))) == Counter([LVertex(1, 3), LVertex(2, 3), LVertex(1, 1)])


def test_zero_over_one_has_its_loop():
    nb = lgraph_neighbors(LVertex(0, 1))
    assert LVertex(0, 1) in nb and LVertex(1, 1) in nb


def test_one_over_one_reaches_one_half_and_zero():
    nb = lgraph_neighbors(LVertex(1, 1))
    assert LVertex(1, 2) in nb and LVertex(0, 1) in nb


def test_minimal_path_examples():
    path = lgraph_minimal_path(LVertex(2, 7))
    assert [(v.p, v.q) for v in path] == subtraction_path(2, 7)
    assert len(path) - 1 == 4
    assert lgraph_minimal_path(LVertex(1, 1)) == [LVertex(1, 1)]
    assert lgraph_minimal_path(LVertex(1, 2)) == [LVertex(1, 2), LVertex(1, 1)]


def test_continued_fraction_of_two_sevenths():
    assert continued_fraction(2, 7) == [0, 3, 2]


def test_same_unordered():
    assert same_unordered(S(1, 2, 3), S(3, 1, 2))
    assert not same_unordered(S(1, 2, 3), S(1, 3, 4))


@given(triples(), st.integers(0, 2))
def test_push_through_is_an_involution(t, i):
    assert push_through(push_through(t, i), i) == t


@given(triples(), st.integers(0, 2))
def test_push_through_keeps_a_sum_entry(t, i):
    u = push_through(t, i)
    assert u.entries[u.sum_index] == sum(u.entries) - u.entries[u.sum_index]
    assert [u[k] for k in range(3) if k != i] == [t[k] for k in range(3) if k != i]


@given(vertices())
def test_neighbour_relation_is_symmetric(v):
    for w in lgraph_neighbors(v):
        assert v in lgraph_neighbors(w)


@given(vertices())
def test_minimal_path_matches_subtraction_oracle(v):
    if v.p == 0:
        return
    assert [(x.p, x.q) for x in lgraph_minimal_path(v)] == subtraction_path(v.p, v.q)


@pytest.mark.parametrize("depth", [4, 8, 12])
def test_lgraph_is_a_tree_apart_from_the_loop(depth):
    # explore from 1/1; count distinct undirected edges among explored vertices
    seen = {LVertex(1, 1): 0}
    queue = deque([LVertex(1, 1)])
    while queue:
        v = queue.popleft()
        if seen[v] == depth:
            continue
        for w in lgraph_neighbors(v):
            if w not in seen:
                seen[w] = seen[v] + 1
                queue.append(w)
    edges = set()
    loops = set()
    for v in seen:
        for w in lgraph_neighbors(v):
            if w in seen:
                if v == w:
                    loops.add(v)
                else:
                    edges.add(frozenset((v, w)))
    assert loops == {LVertex(0, 1)}
    assert len(edges) == len(seen) - 1
