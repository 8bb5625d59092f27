from math import gcd

import pytest

from conftest import tci_text
from oracles import mixed_volume_qhull, polygon_hull
from tropelim.fan import check_balancing, format_fan
from tropelim.poly_io import PolynomialSystem, parse_system
from tropelim.polytope import convex_hull
from tropelim.tropical import TropicalError, tropical_complete_intersection

CURVE = "[x,y,z]\n[x*y + z + 1,  x*z + y + 1]"
OCTA = "[ x, y, z ]\n[ x + y + z + x^2*y^2 + x^2*z^2 + y^2*z^2 ]"
FIVE = "[a,b,c,d,e]\n[a*b + b*c + c*d + d*e + a*e + 1,\n a*b*c + b*c*d + c*d*e + d*e*a + e*a*b]"


def test_curve_fan():
    F = tci_text(CURVE)
    got = {r: F.multiplicity_at(r) for r in F.rays}
    assert got == {(0, -1, -1): 2, (0, 0, 1): 1, (1, 0, 0): 1, (0, 1, 0): 1, (-1, 1, 1): 1}
    assert check_balancing(F)


def test_mixed_volume_when_square():
    assert tci_text("[x,y,z]\n[x*y+z+1, x*z+y+1, y*z+x+1]") == 5


def test_square_system_against_qhull():
    g = parse_system("[x,y,z]\n[x^2 + y*z + 1, x*y^2 + z + x, z^3 + x*y + y + 1]")
    assert tropical_complete_intersection(g) == mixed_volume_qhull([sorted(S) for S in g.supports])


def test_plane_curve_against_edge_oracle():
    # a single polynomial: rays are inner edge normals weighted by lattice length
    pts = [(0, 0), (3, 0), (1, 2), (0, 4), (2, 3)]
    g = PolynomialSystem.from_supports(["x", "y"], [pts])
    F = tropical_complete_intersection(g)
    hull = polygon_hull(pts)
    expect = {}
    for i in range(len(hull)):
        a, b = hull[i - 1], hull[i]
        dx, dy = b[0] - a[0], b[1] - a[1]
        k = gcd(abs(dx), abs(dy))
        # counter-clockwise boundary: inner normal is the left normal
        expect[(-dy // k, dx // k)] = k
    assert {r: F.multiplicity_at(r) for r in F.rays} == expect


def test_octahedron_surface():
    F = tci_text(OCTA)
    assert F.dim == 2 and F.n_rays == 8 and F.n_cones == 12
    assert sorted(F.multiplicities) == [1] * 9 + [2] * 3
    assert check_balancing(F)


def test_five_variable_fan():
    F = tci_text(FIVE)
    assert (F.dim, F.n_rays, F.n_cones) == (3, 26, 60)
    assert set(F.multiplicities) == {1}
    for r in [(-1, 1, 0, 0, 1), (-1, 1, 1, -1, 3), (0, 1, 0, 0, 1), (-1, 3, -1, 1, 1)]:
        assert r in F.rays
    assert {len(c) for c in F.cones} <= {3, 4}


def test_threads_give_identical_output():
    g = parse_system(OCTA)
    assert format_fan(tropical_complete_intersection(g, threads=2)) == format_fan(tci_text(OCTA))


def test_accepts_polytopes():
    polys = [convex_hull([(0, 0), (1, 0), (0, 1)])]
    F = tropical_complete_intersection(polys)
    assert F.n_rays == 3 and check_balancing(F)


def test_too_many_polynomials():
    with pytest.raises(TropicalError):
        tropical_complete_intersection(parse_system("[x]\n[x + 1, x^2 + 1]"))


def test_degenerate_minkowski_sum():
    with pytest.raises(TropicalError):
        tropical_complete_intersection(parse_system("[x,y]\n[x + 1]"))


def test_disjoint_variables_give_empty_mixed_volume():
    # both polynomials only involve x: no common solutions generically
    assert tci_text("[x,y]\n[x + 1, x^2 + x + 1]") == 0
