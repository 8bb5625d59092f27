import pytest

from conftest import tci_text
from tropelim.fan import WeightedFan, check_balancing
from tropelim.poly_io import MonomialMap
from tropelim.pushforward import (PushforwardError, compare_cycles, identity_map, image_cycle,
                                  push_forward)
from tropelim.reconstruct import reconstruct_polytope

CURVE = "[x,y,z]\n[x*y + z + 1,  x*z + y + 1]"
EX42 = "[x1,x2,x3]\n[x1^3 + x2^3 + x3^3 + 1, x1^(-2)+x2^(-2)+x3^(-2)+1]"
OCTA = "[ x, y, z ]\n[ x + y + z + x^2*y^2 + x^2*z^2 + y^2*z^2 ]"


def cone_probes(*fans):
    """Points in the relative interior of every cone (random points would miss the fan)."""
    out = []
    for F in fans:
        for i in range(F.n_cones):
            rays = F.cone_rays(i)
            out.append([sum(r[j] for r in rays) for j in range(F.ambient_dim)])
            out.append([sum((k + 2) * r[j] for k, r in enumerate(rays)) for j in range(F.ambient_dim)])
    return out


def line_fan(v, m=1):
    return WeightedFan.from_cones(len(v), [([v], m), ([tuple(-x for x in v)], m)], 1)


def test_projection_to_a_line():
    G = push_forward(line_fan((1, 2)), [[1, 0]])
    assert G.rays == ((-1,), (1,)) and G.multiplicities == (1, 1)


def test_lattice_index_enters_weight():
    # (1,2) maps to 2 in Z: the image lattice has index 2
    G = push_forward(line_fan((1, 2)), [[0, 1]])
    assert G.multiplicities == (2, 2)


def test_collapsing_everything_is_a_degenerate_fiber():
    with pytest.raises(PushforwardError, match="degenerate fiber"):
        image_cycle(line_fan((1, 0)), [[0, 1]])


def test_collapsed_cones_are_skipped():
    F = tci_text(CURVE)
    cyc = image_cycle(F, [[1, 0, 0], [0, 1, 0]])
    # ray (0,0,1) collapses, the other four survive
    assert len(cyc) == 4


def test_identity_invariance_on_surface():
    F = tci_text(OCTA)
    G = push_forward(F, identity_map(3))
    assert compare_cycles(F, G, cone_probes(F, G))
    assert G.canonical() == F.canonical()


def test_balancing_is_preserved():
    F = tci_text(EX42)
    G = push_forward(F, [[1, 1, 1], [0, 1, 2]])
    assert check_balancing(F) and check_balancing(G)


def test_scaling_is_linear():
    F = tci_text(CURVE)
    A = [[1, 1, 1], [0, 1, 2]]
    G1 = push_forward(F, A)
    G3 = push_forward(F.scaled(3), A)
    assert G3.rays == G1.rays and G3.multiplicities == tuple(3 * m for m in G1.multiplicities)


def test_delta_divides_multiplicities():
    F = line_fan((1, 2), 2)
    assert push_forward(F, [[1, 0]], delta=2).multiplicities == (1, 1)
    with pytest.raises(PushforwardError, match="delta"):
        push_forward(line_fan((1, 2)), [[1, 0]], delta=2)


def test_hexagon_from_pushed_fan():
    G = push_forward(tci_text(EX42), MonomialMap(((1, 1, 1), (0, 1, 2))))
    P = reconstruct_polytope(G)
    assert sorted(P.vertices) == sorted([(36, 0), (0, 36), (30, 12), (18, 12), (6, 24), (18, 24)])


def test_merge_does_not_change_the_cycle():
    F = tci_text(EX42)
    A = [[1, 1, 1], [0, 1, 2]]
    a, b = push_forward(F, A, merge=True), push_forward(F, A, merge=False)
    assert compare_cycles(a, b, cone_probes(a, b))
    assert a.n_cones <= b.n_cones


def test_shape_mismatch():
    with pytest.raises(PushforwardError):
        image_cycle(tci_text(CURVE), [[1, 0]])
