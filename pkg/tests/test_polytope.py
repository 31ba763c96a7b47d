import pytest

from qtoric import polytope as poly
from qtoric.errors import CapabilityError, ValidationError

from oracles import brute_f_vector, brute_h_vector


CUBE_VERTICES = [
    {1, 2, 3}, {1, 2, 6}, {1, 3, 5}, {2, 3, 4},
    {1, 5, 6}, {2, 4, 6}, {3, 4, 5}, {4, 5, 6},
]


def test_cube_combinatorics():
    C = poly.cube()
    assert C.dim == 3
    assert C.num_facets == 6
    assert C.vertices == frozenset(frozenset(v) for v in CUBE_VERTICES)
    assert C.minimal_nonfaces == frozenset(
        {frozenset({1, 4}), frozenset({2, 5}), frozenset({3, 6})})


def test_cube_nonfaces_cross_validation():
    with pytest.raises(ValidationError):
        poly.make_polytope(3, 6, CUBE_VERTICES, minimal_nonfaces=[{1, 2}])


def test_f_vectors_match_brute_force():
    for P in (poly.cube(), poly.simplex(3), poly.segment()):
        assert poly.f_vector(P) == brute_f_vector(P.dim, P.facet_sets())
    assert poly.f_vector(poly.cube()) == (6, 12, 8)
    assert poly.f_vector(poly.simplex(3)) == (4, 6, 4)
    assert poly.f_vector(poly.segment()) == (2,)


def test_h_vectors_match_expansion_oracle():
    for P in (poly.cube(), poly.simplex(3), poly.segment(), poly.simplex(2)):
        assert poly.h_vector(P) == brute_h_vector(P.dim, poly.f_vector(P))
    assert poly.h_vector(poly.cube()) == (1, 3, 3, 1)
    assert poly.h_vector(poly.simplex(3)) == (1, 1, 1, 1)
    assert poly.h_vector(poly.segment()) == (1, 1)


def test_cube_second_entry_is_three():
    assert poly.h_vector(poly.cube())[1] == 3


def test_h_vector_palindromic_and_sums_to_vertex_count():
    for P in (poly.cube(), poly.simplex(2), poly.simplex(3), poly.simplex(4)):
        h = poly.h_vector(P)
        assert h == tuple(reversed(h))
        assert sum(h) == len(P.vertices)


def test_automorphism_groups():
    cube_auts = poly.automorphisms(poly.cube())
    assert len(cube_auts) == 48
    images = {fp.images for fp in cube_auts}
    for name, cycles in [
        ("s1", [(1, 2), (4, 5)]),
        ("s2", [(1, 3), (4, 6)]),
        ("s3", [(2, 3), (5, 6)]),
        ("t1", [(1, 4)]),
    ]:
        fp = poly.FacetPermutation.from_cycles(6, cycles)
        assert fp.images in images, name
    assert len(poly.automorphisms(poly.simplex(3))) == 24
    assert len(poly.automorphisms(poly.segment())) == 2


def test_automorphisms_preserve_vertices():
    P = poly.cube()
    for fp in poly.automorphisms(P):
        for v in P.vertices:
            assert frozenset(fp(i) for i in v) in P.vertices


def test_automorphism_cap():
    verts = [(i, i % 13 + 1) for i in range(1, 14)]
    # a 13-gon: 13 facets exceeds the cap
    P = poly.make_polytope(2, 13, verts)
    with pytest.raises(CapabilityError):
        poly.automorphisms(P)


def test_validation_rejects_bad_vertex_size():
    with pytest.raises(ValidationError):
        poly.make_polytope(3, 6, [{1, 2}])


def test_validation_rejects_bad_ridges():
    # two vertices sharing no consistent ridge structure
    with pytest.raises(ValidationError):
        poly.make_polytope(2, 4, [{1, 2}, {1, 3}, {1, 4}, {2, 3}, {3, 4}, {2, 4}])


def test_json_round_trip(tmp_path):
    import json

    P = poly.cube()
    path = tmp_path / "cube.json"
    path.write_text(json.dumps(poly.to_json_dict(P)))
    Q = poly.load(path)
    assert Q == P


def test_perm_compose_and_inverse():
    s1 = poly.FacetPermutation.from_cycles(6, [(1, 2), (4, 5)])
    t1 = poly.FacetPermutation.from_cycles(6, [(1, 4)])
    assert s1.compose(s1).images == poly.FacetPermutation.identity(6).images
    assert t1.inverse().images == t1.images
    both = s1.compose(t1)     # s1 after t1
    assert both(1) == s1(t1(1))
