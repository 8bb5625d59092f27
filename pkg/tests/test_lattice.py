import pytest

from oracles import det, hnf_is_row_style, matmul
from tropelim.lattice import (LatticeBasis, LatticeError, determinant, hermite_normal_form,
                              integer_kernel, is_hnf, lattice_index, primitive, rank,
                              saturated_span_lattice, solve_rational)


def check_hnf(M):
    H, U = hermite_normal_form(M)
    assert [list(r) for r in matmul(U, M)] == [list(r) for r in H]
    assert abs(det(U)) == 1
    assert hnf_is_row_style(H)
    assert is_hnf(H)
    return H


def test_hnf_identity():
    H, U = hermite_normal_form([[1, 0], [0, 1]])
    assert [list(r) for r in H] == [[1, 0], [0, 1]]
    assert [list(r) for r in U] == [[1, 0], [0, 1]]


def test_hnf_small():
    # row lattice of ((2,4),(1,3)) has determinant 2 and contains (1,3)
    assert [list(r) for r in check_hnf([[2, 4], [1, 3]])] == [[1, 1], [0, 2]]


def test_hnf_zero_row():
    H = check_hnf([[0, 0]])
    assert [list(r) for r in H] == [[0, 0]]


def test_hnf_rank_deficient():
    H = check_hnf([[2, 4, 6], [1, 2, 3], [0, 1, 1]])
    assert list(H[-1]) == [0, 0, 0]


def test_determinant_matches_oracle():
    M = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
    assert determinant(M) == det(M)


def test_saturation():
    L = saturated_span_lattice([(2, 0), (0, 2)])
    assert L.rank == 2 and lattice_index(LatticeBasis.standard(2), L.vectors) == 1
    assert saturated_span_lattice([(1, 1, 1)]).vectors == ((1, 1, 1),)
    assert saturated_span_lattice([(2, 4, 6)]).vectors == ((1, 2, 3),)


def test_saturation_idempotent():
    L = saturated_span_lattice([(2, 4, 6, 0), (0, 3, 3, 9)])
    assert saturated_span_lattice(L.vectors) == L


def test_saturation_of_zero_raises():
    with pytest.raises(LatticeError):
        saturated_span_lattice([(0, 0)])


def test_lattice_index_examples():
    assert lattice_index(LatticeBasis.standard(2), [(2, 0), (0, 3)]) == 6
    assert lattice_index(saturated_span_lattice([(1, 2, 3)]), [(2, 4, 6)]) == 2
    with pytest.raises(LatticeError):
        lattice_index(LatticeBasis.standard(2), [(1, 0)])


def test_primitive():
    assert primitive((4, -6, 0)) == (2, -3, 0)
    with pytest.raises(LatticeError):
        primitive((0, 0))


def test_kernel_and_solve():
    M = [[1, 1, 1], [0, 1, 2]]
    K = integer_kernel(M, 3)
    assert len(K) == 1 and all(sum(a * b for a, b in zip(r, K[0])) == 0 for r in M)
    assert rank(M) == 2
    x = solve_rational([[2, 0], [0, 3]], [1, 1])
    assert x is not None and x[0] * 2 == 1 and x[1] * 3 == 1


def test_basis_coordinates():
    L = LatticeBasis.from_vectors([(1, 1, 0), (0, 1, 1)])
    assert L.contains((1, 2, 1))
    assert not L.contains((1, 0, 0))
    assert L.in_span((2, 3, 1))
