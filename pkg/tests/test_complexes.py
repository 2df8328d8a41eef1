"""Core complex operations against hand-checked and enumerated oracles."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossflips.complexes import (
    Complex,
    FaceNotPresent,
    ManifoldVerdict,
    NotPure,
    NotSubcomplex,
    VertexCollision,
    are_isomorphic,
    boundary_complex,
    complex_from_doc,
    complex_to_doc,
    delete_face,
    delete_subcomplex,
    f_vector,
    face,
    find_balanced_coloring,
    h_vector,
    is_combinatorial_manifold,
    is_induced,
    is_proper_coloring,
    join,
    link,
    relabel,
    star,
)
from crossflips.diamond import (
    cross_polytope,
    diamond_closed_form,
    simplex_boundary,
    standard_coloring,
)

TRIANGLE_BOUNDARY = Complex([face("a", "b"), face("b", "c"), face("a", "c")])


def brute_force_f_vector(c):
    """Independent face count: enumerate subsets of every facet."""
    seen = set()
    for g in c.facets:
        vs = tuple(g)
        for r in range(1, len(vs) + 1):
            seen.update(frozenset(x) for x in itertools.combinations(vs, r))
    d = c.dimension
    counts = [1] + [0] * (d + 1)
    for f in seen:
        counts[len(f)] += 1
    return tuple(counts)


def test_faces_counts():
    assert TRIANGLE_BOUNDARY.faces(1) == {face("a", "b"), face("b", "c"), face("a", "c")}
    c2 = cross_polytope(2)
    assert len(c2.faces(2)) == 8
    assert len(c2.faces(0)) == 6


def test_empty_and_void_are_distinct():
    assert Complex.empty() != Complex.void()
    assert Complex.void().dimension == -1
    assert Complex.void().is_pure
    assert Complex.empty().dimension is None
    assert f_vector(Complex.void()) == (1,)


def test_antichain_rejected():
    with pytest.raises(ValueError):
        Complex([face("a", "b", "c"), face("a", "b")])


def test_link_of_cross_polytope_vertex():
    c2 = cross_polytope(2)
    lk = link(c2, face(0))
    want = Complex(
        [face(1, 2), face(1, "v2"), face("v1", 2), face("v1", "v2")]
    )
    assert lk == want


def test_star_spans_both_triangles():
    c = Complex([face("a", "b", "c"), face("b", "c", "d")])
    assert star(c, face("b", "c")) == c
    with pytest.raises(FaceNotPresent):
        star(c, face("a", "d"))


def test_link_star_duality():
    c2 = cross_polytope(2)
    for f in sorted(c2.all_faces(), key=len):
        if not f:
            continue
        assert star(c2, f) == join(Complex([f]), link(c2, f))


def test_delete_face():
    c = cross_polytope(2)
    e = face(0, 1)
    out = delete_face(c, e)
    assert not out.has_face(e)
    for g in c.all_faces():
        if not e <= g:
            assert out.has_face(g)
    with pytest.raises(FaceNotPresent):
        delete_face(c, face(0, "v0"))


def test_join_collision():
    with pytest.raises(VertexCollision):
        join(TRIANGLE_BOUNDARY, Complex([face("a")]))


def test_boundary_complex():
    tri = Complex([face("a", "b", "c")])
    assert boundary_complex(tri) == TRIANGLE_BOUNDARY.generated_by(
        [face("a", "b"), face("b", "c"), face("a", "c")]
    )
    assert boundary_complex(cross_polytope(2)) == Complex.empty()
    two = Complex([face("a", "b", "c"), face("b", "c", "d")])
    assert len(boundary_complex(two).facets) == 4


def test_f_and_h_vectors():
    assert h_vector(cross_polytope(2)) == (1, 3, 3, 1)
    assert h_vector(Complex([face(0, 1, 2)])) == (1, 0, 0, 0)
    # derived: f of the 0-index diamond complex is (1, 5, 8, 4)
    d0 = diamond_closed_form(2, [0])
    assert brute_force_f_vector(d0) == (1, 5, 8, 4)
    assert f_vector(d0) == (1, 5, 8, 4)
    assert h_vector(d0) == (1, 2, 1, 0)
    with pytest.raises(NotPure):
        f_vector(Complex([face("a", "b"), face("c")]))


def test_h_vector_binomials_for_cross_polytopes():
    import math

    for d in range(5):
        hv = h_vector(cross_polytope(d))
        assert hv == tuple(math.comb(d + 1, i) for i in range(d + 2))


def test_is_induced():
    c2 = cross_polytope(2)
    assert is_induced(c2, Complex([face(0, 1, 2)]))
    cyc = Complex([face("a", "b"), face("b", "c"), face("c", "d"), face("d", "a")])
    sub = Complex([face("a", "b"), face("c", "d")])
    assert not is_induced(cyc, sub)
    # derived: enumerate the faces of the cross-polytope boundary spanned by
    # the vertices of the 0-index diamond complex
    d0 = diamond_closed_form(2, [0])
    spanned = {f for f in c2.all_faces() if f <= d0.vertices}
    assert spanned == d0.all_faces()
    assert is_induced(c2, d0)
    with pytest.raises(NotSubcomplex):
        is_induced(TRIANGLE_BOUNDARY, Complex([face("x", "y")]))


def test_proper_colorings():
    c2 = cross_polytope(2)
    assert is_proper_coloring(c2, standard_coloring(2), 3)
    bad = {v: 0 for v in TRIANGLE_BOUNDARY.vertices}
    assert not is_proper_coloring(TRIANGLE_BOUNDARY, bad, 3)


def test_find_balanced_coloring():
    c2 = cross_polytope(2)
    col = find_balanced_coloring(c2)
    assert col is not None
    assert is_proper_coloring(c2, col, 3)
    # the 3-simplex boundary is a 2-sphere that needs four colors
    assert find_balanced_coloring(simplex_boundary(2)) is None


def test_are_isomorphic_examples():
    for d in range(1, 5):
        a = diamond_closed_form(d, [d])
        b = diamond_closed_form(d, [d + 1])
        assert are_isomorphic(a, b) is not None
    m = are_isomorphic(diamond_closed_form(2, [2, 3]), diamond_closed_form(2, [1]))
    assert m is not None
    assert m["1"] == "v1" and m["0"] == "0"
    path2 = Complex([face("a", "b"), face("b", "c")])
    path3 = Complex([face("a", "b"), face("b", "c"), face("c", "d")])
    assert are_isomorphic(path2, path3) is None


def test_are_isomorphic_is_equivalence():
    samples = [
        cross_polytope(2),
        diamond_closed_form(2, [0, 1]),
        TRIANGLE_BOUNDARY,
    ]
    for c in samples:
        ident = are_isomorphic(c, c)
        assert ident is not None
        mapping = {v: "z%d" % i for i, v in enumerate(sorted(c.vertices))}
        other = relabel(c, mapping)
        fwd = are_isomorphic(c, other)
        assert fwd is not None
        image = Complex(frozenset(fwd[v] for v in f) for f in c.facets)
        assert image == other
        back = are_isomorphic(other, c)
        assert back is not None


def test_are_isomorphic_respects_colors():
    c2 = cross_polytope(2)
    ka = standard_coloring(2)
    assert are_isomorphic(c2, c2, respect_colors=(ka, dict(ka))) is not None
    # rotating every pair color is realized by permuting the pairs
    rotated = {v: (c + 1) % 3 for v, c in ka.items()}
    assert are_isomorphic(c2, c2, respect_colors=(ka, rotated)) is not None
    # mismatched color multiplicities obstruct any color-preserving map
    cyc = Complex([face("a", "b"), face("b", "c"), face("c", "d"), face("d", "a")])
    two = {"a": 0, "b": 1, "c": 0, "d": 1}
    three = {"a": 0, "b": 1, "c": 2, "d": 1}
    assert are_isomorphic(cyc, cyc, respect_colors=(two, dict(two))) is not None
    assert are_isomorphic(cyc, cyc, respect_colors=(two, three)) is None


def test_manifold_recognition():
    assert is_combinatorial_manifold(cross_polytope(2)) is ManifoldVerdict.CLOSED
    pinch = Complex([face("a", "b", "c"), face("a", "d", "e")])
    assert is_combinatorial_manifold(pinch) is ManifoldVerdict.NO
    # derived: the {0,1} diamond complex is a disc
    d01 = diamond_closed_form(2, [0, 1])
    assert is_combinatorial_manifold(d01) is ManifoldVerdict.WITH_BOUNDARY
    assert is_combinatorial_manifold(cross_polytope(3)) is ManifoldVerdict.CLOSED
    assert is_combinatorial_manifold(cross_polytope(4)) is ManifoldVerdict.UNDECIDED
    with pytest.raises(NotPure):
        is_combinatorial_manifold(Complex([face("a", "b"), face("c")]))


def test_boundary_of_small_manifolds_is_closed():
    balls = [
        Complex([face("a", "b", "c"), face("b", "c", "d")]),
        diamond_closed_form(2, [0, 1]),
        diamond_closed_form(3, [0, 1]),
    ]
    for ball in balls:
        bd = boundary_complex(ball)
        d = ball.dimension
        count = {}
        for g in bd.facets:
            for x in g:
                r = g - {x}
                count[r] = count.get(r, 0) + 1
        assert all(n != 1 for n in count.values())


def test_json_round_trip():
    c2 = cross_polytope(2)
    doc = complex_to_doc(c2, standard_coloring(2))
    back, coloring = complex_from_doc(doc)
    assert back == c2
    assert coloring == standard_coloring(2)
    assert doc["facets"][0] == ["0", "1", "2"]
    with pytest.raises(ValueError):
        complex_from_doc({"facets": [["a", "b", "c"], ["a", "b"]]})


# ---------------------------------------------------------------------------
# property tests


@st.composite
def small_pure_2_complexes(draw):
    pool = "abcdefg"
    n = draw(st.integers(min_value=1, max_value=6))
    facets = draw(
        st.sets(
            st.frozensets(st.sampled_from(pool), min_size=3, max_size=3),
            min_size=1,
            max_size=n,
        )
    )
    return Complex(facets)


@given(small_pure_2_complexes())
@settings(max_examples=60, deadline=None)
def test_h_sums_to_facet_count(c):
    hv = h_vector(c)
    assert hv[0] == 1
    assert sum(hv) == len(c.facets)


@given(small_pure_2_complexes())
@settings(max_examples=60, deadline=None)
def test_f_matches_brute_force(c):
    assert f_vector(c) == brute_force_f_vector(c)


@given(small_pure_2_complexes())
@settings(max_examples=40, deadline=None)
def test_delete_subcomplex_leaves_other_facets(c):
    facets = sorted(c.facets, key=sorted)
    sub = Complex(facets[: len(facets) // 2 + 1])
    out = delete_subcomplex(c, sub)
    assert out.facets == c.facets - sub.facets
