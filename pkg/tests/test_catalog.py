"""Flip catalog, composition verifications, matroid, example families."""

import itertools
import math

import pytest

from crossflips.catalog import (
    DimensionCapExceeded,
    MINIMAL_SUFFICIENT_SETS,
    ambient_with_induced_diamond,
    barycentric_sphere,
    check_matroid_bases,
    enumerate_basic_flips,
    matroid_report,
    relative_shelling_setting,
    stacked_cross_sphere,
    stacked_cross_sphere_colored,
    verify_pentagon_composition,
    verify_reducibility_composition,
)
from crossflips.complexes import (
    ManifoldVerdict,
    are_isomorphic,
    h_vector,
    is_combinatorial_manifold,
    is_induced,
    is_proper_coloring,
)
from crossflips.diamond import diamond_closed_form
from crossflips.moves import CrossFlip


def test_enumerate_counts():
    for d in range(1, 7):
        classes = enumerate_basic_flips(d)
        assert len(classes) == 2 ** (d + 1) - 1
        counts = [fc.facet_count for fc in classes]
        assert len(set(counts)) == len(counts)
        assert sum(1 for fc in classes if fc.sufficient) == 2 ** d
    with pytest.raises(DimensionCapExceeded):
        enumerate_basic_flips(7)


def test_d2_catalog_rows():
    classes = enumerate_basic_flips(2)
    by_index = {fc.canonical_index: fc for fc in classes}
    assert by_index[(0,)].complement_class == (0,)
    assert by_index[(2,)].complement_class == (0, 1, 2)
    assert by_index[(1, 2)].complement_class == (0, 2)
    trivial = by_index[(0,)]
    assert not trivial.sufficient


def test_complement_class_involution():
    for d in (1, 2, 3):
        for fc in enumerate_basic_flips(d):
            comp = fc.complement_class
            back = next(
                x for x in enumerate_basic_flips(d) if x.canonical_index == comp
            )
            assert back.complement_class == fc.canonical_index


def test_classes_pairwise_nonisomorphic():
    for d in (1, 2, 3):
        built = [
            diamond_closed_form(d, fc.canonical_index)
            for fc in enumerate_basic_flips(d)
        ]
        for a, b in itertools.combinations(built, 2):
            assert are_isomorphic(a, b) is None


def test_stacked_spheres():
    assert stacked_cross_sphere(1, 2) == stacked_cross_sphere(1, 2)
    for d in (1, 2, 3):
        for copies in (1, 2, 3, 4):
            s, coloring = stacked_cross_sphere_colored(copies, d)
            hv = h_vector(s)
            assert hv[0] == 1 and hv[d + 1] == 1
            for i in range(1, d + 1):
                assert hv[i] == copies * math.comb(d + 1, i), (d, copies, i)
            assert is_proper_coloring(s, coloring, d + 1)
    two = stacked_cross_sphere(2, 2)
    assert two.n_facets == 14 and h_vector(two) == (1, 6, 6, 1)


def test_barycentric_sphere():
    hexagon, coloring = barycentric_sphere(1)
    assert hexagon.n_facets == 6
    assert is_proper_coloring(hexagon, coloring, 2)
    sphere, coloring = barycentric_sphere(2)
    assert sphere.n_facets == 24
    assert is_proper_coloring(sphere, coloring, 3)
    assert is_combinatorial_manifold(sphere) is ManifoldVerdict.CLOSED
    with pytest.raises(DimensionCapExceeded):
        barycentric_sphere(4)


def test_ambient_builder_without_chords():
    for d in (1, 2, 3):
        for r in range(1, d + 2):
            for idx in itertools.combinations(range(d + 1), r):
                amb, coloring, emb = ambient_with_induced_diamond(d, idx)
                dc = diamond_closed_form(d, idx)
                assert is_induced(amb, dc), idx
                assert is_proper_coloring(amb, coloring, d + 1)
                assert is_combinatorial_manifold(amb) is ManifoldVerdict.CLOSED
                assert emb == {v: v for v in dc.vertices}


def test_reducibility_compositions():
    for d in (2, 3):
        for r in range(1, d + 1):
            for idx in itertools.combinations(range(d), r):
                amb, _coloring, emb = ambient_with_induced_diamond(d, idx)
                site = CrossFlip(d=d, spec=idx, embedding=emb)
                assert verify_reducibility_composition(d, idx, amb, site), idx


def test_pentagon_composition_both_directions():
    amb, coloring, emb = ambient_with_induced_diamond(2, (1, 2))
    site = CrossFlip(d=2, spec=(1, 2), embedding=emb)
    assert verify_pentagon_composition(amb, site, coloring, reverse=False)
    assert verify_pentagon_composition(amb, site, coloring, reverse=True)


def test_pentagon_on_stacked_ambient():
    # the composition also verifies away from the minimal sphere
    from crossflips.moves import find_cross_flip_sites

    amb, coloring = stacked_cross_sphere_colored(2, 2)
    sites = find_cross_flip_sites(amb, coloring, (1, 2))
    assert sites
    assert verify_pentagon_composition(amb, sites[0], coloring, reverse=False)


def test_matroid_bases():
    assert check_matroid_bases()
    rep = matroid_report()
    assert rep["rank"] == 3 and rep["ground_size"] == 6
    assert sorted(len(cls) for cls in rep["parallel_classes"]) == [2, 2, 2]
    # removing any basis breaks the exchange axiom
    for basis in MINIMAL_SUFFICIENT_SETS:
        rest = MINIMAL_SUFFICIENT_SETS - {basis}
        assert not check_matroid_bases(rest)
    assert check_matroid_bases([frozenset({(1,), (2,)})])


def test_relative_setting_shapes():
    from crossflips.complexes import boundary_complex

    setting = relative_shelling_setting(2, (1, 0, 2))
    assert setting is not None
    rc, ridge = setting
    assert len(ridge) == 2
    assert rc.removed.is_subcomplex_of(rc.ambient)
    assert is_combinatorial_manifold(rc.ambient) is ManifoldVerdict.WITH_BOUNDARY
    # the diamond complex meets the ambient boundary in exactly the ridge
    dcomp = diamond_closed_form(2, (0, 1, 2))
    bd_faces = boundary_complex(rc.ambient).all_faces()
    met = {f for f in dcomp.all_faces() if f and f in bd_faces}
    assert met == {g for g in dcomp.all_faces() if g and g <= ridge}
