"""Exact integer linear algebra.

Hermite normal forms, integer kernels, saturated lattices and lattice
indices.  Everything works on plain Python ints (and ``Fraction`` where a
rational solve is unavoidable), so results are exact regardless of size.

HNF convention used throughout the package: row style, ``U @ M == H`` with
``U`` unimodular, pivots strictly positive, entries above a pivot reduced
into ``[0, pivot)``, zero rows at the bottom.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[int, ...]
Matrix = list[list[int]]


class LatticeError(ValueError):
    pass


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries (sign kept)."""
    g = reduce(gcd, v, 0)
    if g == 0:
        raise LatticeError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def vector_gcd(v: Iterable[int]) -> int:
    return reduce(gcd, v, 0)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def hermite_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ M == H``.
    """
    H = [list(row) for row in M]
    m = len(H)
    n = len(H[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        # Euclid on column c over rows r..m-1
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                U[r], U[piv] = U[piv], U[r]
            done = True
            hr, ur = H[r], U[r]
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // hr[c]
                    hi, ui = H[i], U[i]
                    for j in range(c, n):
                        hi[j] -= q * hr[j]
                    for j in range(m):
                        ui[j] -= q * ur[j]
                    if hi[c]:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


def is_hnf(H: Sequence[Sequence[int]]) -> bool:
    """Shape predicate for the row-style HNF convention above."""
    last = -1
    seen_zero = False
    for row in H:
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            seen_zero = True
            continue
        if seen_zero or lead <= last or row[lead] <= 0:
            return False
        last = lead
    pivots = []
    for i, row in enumerate(H):
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is not None:
            pivots.append((i, lead))
    for i, c in pivots:
        p = H[i][c]
        for k in range(i):
            if not 0 <= H[k][c] < p:
                return False
    return True


def determinant(M: Sequence[Sequence]) -> int | Fraction:
    """Exact determinant via fraction-free Bareiss elimination."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                v = row_i[j] * akk - aik * row_k[j]
                row_i[j] = v // prev if isinstance(v, int) and isinstance(prev, int) else v / prev
        prev = akk
    return sign * A[n - 1][n - 1]


def rank(rows: Sequence[Sequence]) -> int:
    return len(echelon_pivots(rows)[1])


def echelon_pivots(rows: Sequence[Sequence]) -> tuple[list[int], list[int]]:
    """Greedy independent subset of ``rows`` and the pivot columns found.

    Returns ``(row_indices, pivot_columns)``; rows listed are linearly
    independent and span the same space as all rows.
    """
    basis: list[tuple[int, list]] = []  # (pivot col, reduced row)
    chosen: list[int] = []
    for idx, r in enumerate(rows):
        v = list(r)
        for col, b in basis:
            if v[col]:
                f = v[col]
                bc = b[col]
                v = [x * bc - f * y for x, y in zip(v, b)]
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is None:
            continue
        g = vector_gcd(v) if all(isinstance(x, int) for x in v) else 1
        if g > 1:
            v = [x // g for x in v]
        basis.append((lead, v))
        chosen.append(idx)
    return chosen, [c for c, _ in basis]


def integer_kernel(M: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x in Z^n : M x = 0}``; the returned lattice is saturated."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    Mt = [[M[i][j] for i in range(len(M))] for j in range(ncols)]
    H, U = hermite_normal_form(Mt)
    return [tuple(U[i]) for i in range(ncols) if not any(H[i])]


def solve_rational(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One exact solution of ``A x = b`` (any shape), or None if inconsistent."""
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][n]
    return x


@dataclass(frozen=True)
class LatticeBasis:
    """Integer basis of a sublattice of Z^p, stored in HNF.

    The rows are kept in Hermite normal form, so two ``LatticeBasis``
    objects describe the same lattice exactly when they compare equal.
    """

    ambient_dim: int
    vectors: tuple[Vector, ...]

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[int]], ambient_dim: int | None = None
                     ) -> "LatticeBasis":
        vectors = [tuple(int(x) for x in v) for v in vectors]
        if ambient_dim is None:
            if not vectors:
                raise LatticeError("ambient dimension needed for an empty basis")
            ambient_dim = len(vectors[0])
        if not vectors:
            return cls(ambient_dim, ())
        H, _ = hermite_normal_form(vectors)
        rows = tuple(tuple(r) for r in H if any(r))
        return cls(ambient_dim, rows)

    @classmethod
    def standard(cls, n: int) -> "LatticeBasis":
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def _pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(v) if x) for v in self.vectors]

    def coordinates(self, v: Sequence) -> list[Fraction] | None:
        """Rational coordinates of ``v`` in this basis, or None if outside the span."""
        # Rows are in echelon form: back-substitute along pivot columns.
        coords: list = []
        rest = [Fraction(x) for x in v]
        for row, c in zip(self.vectors, self._pivots()):
            t = rest[c] / row[c]
            coords.append(t)
            if t:
                rest = [x - t * y for x, y in zip(rest, row)]
        if any(rest):
            return None
        return coords

    def integer_coordinates(self, v: Sequence[int]) -> list[int]:
        coords = self.coordinates(v)
        if coords is None:
            raise LatticeError(f"vector {tuple(v)} is not in the span of the lattice")
        if any(c.denominator != 1 for c in coords):
            raise LatticeError(f"vector {tuple(v)} is not in the lattice")
        return [int(c) for c in coords]

    def contains(self, v: Sequence[int]) -> bool:
        coords = self.coordinates(v)
        return coords is not None and all(c.denominator == 1 for c in coords)

    def in_span(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None


def saturated_span_lattice(vectors: Sequence[Sequence[int]], ambient_dim: int | None = None
                           ) -> LatticeBasis:
    """Basis of ``span(vectors) ∩ Z^p``."""
    vectors = [tuple(v) for v in vectors]
    if ambient_dim is None:
        ambient_dim = len(vectors[0]) if vectors else 0
    nonzero = [v for v in vectors if any(v)]
    if not nonzero:
        raise LatticeError("cannot saturate the span of zero vectors")
    orth = integer_kernel(nonzero, ambient_dim)
    if not orth:
        return LatticeBasis.standard(ambient_dim)
    return LatticeBasis.from_vectors(integer_kernel(orth, ambient_dim), ambient_dim)


def lattice_index(target: LatticeBasis, sub: Sequence[Sequence[int]]) -> int:
    """Index ``[target : <sub>]``; sub must span the same rational space."""
    coords = [target.integer_coordinates(v) for v in sub]
    if not coords or rank(coords) != target.rank:
        raise LatticeError("sublattice does not span the target lattice's space")
    H, _ = hermite_normal_form(coords)
    idx = 1
    for i in range(target.rank):
        lead = next(x for x in H[i] if x)
        idx *= lead
    return abs(idx)

