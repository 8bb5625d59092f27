from itertools import product

import pytest

from oracles import box_count, brute_hull, mixed_area, mixed_volume_qhull, pick_count
from tropelim.lattice import LatticeBasis, saturated_span_lattice
from tropelim.polytope import (Cone, PolytopeError, convex_hull, count_lattice_points,
                               face_in_direction, lattice_points, minkowski_sum,
                               mixed_volume, normal_fan_skeleton, normalized_volume)

CUBE = [p for p in product((0, 1), repeat=3)]
OCTAHEDRON = [(2, 2, 0), (0, 2, 2), (0, 1, 0), (2, 0, 2), (1, 0, 0), (0, 0, 1)]
TRIANGLES = [[(1, 1, 0), (0, 0, 1), (0, 0, 0)],
             [(1, 0, 1), (0, 1, 0), (0, 0, 0)],
             [(0, 1, 1), (1, 0, 0), (0, 0, 0)]]


def test_cube_structure():
    P = convex_hull(CUBE)
    assert P.dim == 3 and len(P.vertices) == 8 and P.f_vector() == [8, 12, 6]
    assert count_lattice_points(P) == 8


def test_hull_matches_brute_force():
    pts = CUBE + [(0, 0, 3), (2, 1, 1), (1, 1, 1)]
    P = convex_hull(pts)
    verts, facets = brute_hull(pts)
    assert sorted(P.vertices) == verts
    assert sorted(P.facets) == facets


def test_interior_and_duplicate_points_dropped():
    P = convex_hull([(0, 0), (4, 0), (0, 4), (1, 1), (1, 1), (2, 2)])
    assert sorted(P.vertices) == [(0, 0), (0, 4), (4, 0)]


def test_lower_dimensional_hull():
    P = convex_hull([(0, 0, 0), (2, 4, 0), (1, 2, 0)])
    assert P.dim == 1 and len(P.equations) == 2
    assert sorted(P.vertices) == [(0, 0, 0), (2, 4, 0)]
    assert normalized_volume(P, saturated_span_lattice([(1, 2, 0)])) == 2


def test_normalized_volume_examples():
    assert normalized_volume(convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])) == 1
    assert normalized_volume(convex_hull([(0, 0), (3, 0), (0, 3)]), LatticeBasis.standard(2)) == 9


def test_normalized_volume_wrong_lattice():
    with pytest.raises(PolytopeError):
        normalized_volume(convex_hull([(0, 0), (1, 1)]), saturated_span_lattice([(1, 0)]))


def test_mixed_volume_triangles():
    assert mixed_volume([convex_hull(T) for T in TRIANGLES]) == 5
    assert mixed_volume_qhull(TRIANGLES) == 5


def test_mixed_volume_unit_segments():
    assert mixed_volume([convex_hull([(0, 0), (1, 0)]), convex_hull([(0, 0), (0, 1)])]) == 1


def test_mixed_volume_diagonal():
    P = convex_hull([(0, 0, 0), (2, 0, 1), (0, 3, 0), (1, 1, 2)])
    assert mixed_volume([P, P, P]) == normalized_volume(P)


def test_mixed_area_against_oracle():
    P = [(0, 0), (3, 1), (1, 4)]
    Q = [(0, 0), (2, 0), (2, 2), (0, 1)]
    assert mixed_volume([convex_hull(P), convex_hull(Q)]) == mixed_area(P, Q)


def test_mixed_volume_ambient_mismatch():
    with pytest.raises(PolytopeError):
        mixed_volume([convex_hull([(0, 0), (1, 0)]), convex_hull([(0, 0, 0), (0, 1, 0)])])


def test_lattice_points_polygon_pick():
    pts = [(0, 0), (7, 2), (3, 9), (-2, 5)]
    P = convex_hull(pts)
    assert count_lattice_points(P) == pick_count(pts) == len(lattice_points(P))


def test_lattice_points_box_scan():
    P = convex_hull([(0, 0, 0), (5, 0, 1), (0, 4, 2), (1, 1, 6), (3, 3, 3)])
    assert count_lattice_points(P) == box_count(P.facets, (0, 0, 0), (5, 4, 6))


def test_ehrhart_consistency():
    # count(kP) for k = 0..4 satisfies the cubic interpolated from k = 0..3
    P = [(0, 0, 0), (2, 0, 0), (0, 1, 0), (1, 1, 3)]
    counts = [count_lattice_points(convex_hull([tuple(k * x for x in v) for v in P]))
              if k else 1 for k in range(5)]
    d3 = [counts[i + 1] - counts[i] for i in range(4)]
    d2 = [d3[i + 1] - d3[i] for i in range(3)]
    d1 = [d2[i + 1] - d2[i] for i in range(2)]
    assert d1[0] == d1[1]


def test_minkowski_sum_of_segments_is_square():
    S = minkowski_sum(convex_hull([(0, 0), (2, 0)]), convex_hull([(0, 0), (0, 2)]))
    assert sorted(S.vertices) == [(0, 0), (0, 2), (2, 0), (2, 2)]


def test_faces_in_direction():
    P = convex_hull(CUBE)
    F = face_in_direction(P, (1, 0, 0))
    assert F.dim == 2 and all(v[0] == 0 for v in F.vertices)


def test_normal_fan_skeleton_counts():
    P = convex_hull(CUBE)
    assert len(normal_fan_skeleton(P, 3)) == 8
    assert len(normal_fan_skeleton(P, 2)) == 12
    cones = normal_fan_skeleton(convex_hull(OCTAHEDRON), 2)
    assert len(cones) == 12
    assert len({r for c, _ in cones for r in c.rays}) == 8


def test_skeleton_interior_points():
    P = convex_hull(OCTAHEDRON)
    for cone, w in normal_fan_skeleton(P, 2):
        assert cone.contains_relint(w)
        # the face minimizing w is an edge
        assert face_in_direction(P, w).dim == 1


def test_skeleton_needs_full_dimension():
    with pytest.raises(PolytopeError):
        normal_fan_skeleton(convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)]), 2)


def test_cone_basics():
    C = Cone.from_generators([(1, 0), (1, 1), (0, 1), (2, 1)])
    assert C.dim == 2 and sorted(C.rays) == [(0, 1), (1, 0)]
    assert C.contains((3, 5)) and not C.contains((-1, 1))
