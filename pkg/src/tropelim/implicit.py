"""Newton polytopes of implicit equations.

A parametrization ``t -> (g_1(t), ..., g_n(t))`` with ``t`` in n-1 variables
is replaced by its graph ``{g_i(t) - y_i = 0}`` in 2n-1 variables.  The
tropical variety of the graph, pushed forward along the projection to
the ``y`` coordinates, is the tropical hypersurface of the implicit
equation; its dual polytope is the answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lattice import rank
from .poly_io import MonomialMap, PolynomialSystem
from .polytope import Polytope, convex_hull, count_lattice_points
from .pushforward import image_cycle
from .reconstruct import Hypersurface, reconstruct_polytope
from .tropical import tropical_complete_intersection


class ImplicitizationError(ValueError):
    pass


@dataclass(frozen=True)
class ImplicitResult:
    polytope: Polytope
    n_lattice_points: int | None

    @property
    def degree(self) -> int:
        """Total degree of the implicit equation (polytope placed at the origin corner)."""
        return max(sum(v) for v in self.polytope.vertices)


def _fresh_names(taken, n):
    names, k = [], 1
    while len(names) < n:
        cand = f"y{k}"
        if cand not in taken:
            names.append(cand)
        k += 1
    return names


def build_graph_system(g: PolynomialSystem) -> tuple[PolynomialSystem, MonomialMap]:
    n = g.n_polynomials
    if n < 2:
        raise ImplicitizationError("need at least two parametrizing polynomials")
    if g.n_variables != n - 1:
        raise ImplicitizationError(
            f"{n} polynomials need {n - 1} parameters, got {g.n_variables}")
    p = 2 * n - 1
    supports = []
    for i, S in enumerate(g.supports):
        e = tuple(int(j == n - 1 + i) for j in range(p))
        supports.append(frozenset({a + (0,) * n for a in S} | {e}))
    names = tuple(g.variables) + tuple(_fresh_names(set(g.variables), n))
    A = tuple(tuple(int(j == n - 1 + i) for j in range(p)) for i in range(n))
    return PolynomialSystem(names, tuple(supports)), MonomialMap(A)


def is_graph_form(g: PolynomialSystem) -> bool:
    """True for systems already written as ``c`` equations in ``2c - 1`` variables."""
    return g.n_polynomials >= 2 and g.n_variables == 2 * g.n_polynomials - 1


def eliminate(system: PolynomialSystem, A, delta: int = 1, threads: int = 1) -> Polytope:
    """Newton polytope of the image hypersurface of a generic complete intersection."""
    M = A.matrix if isinstance(A, MonomialMap) else tuple(tuple(r) for r in A)
    F = tropical_complete_intersection(system, threads=threads)
    if isinstance(F, int):
        raise ImplicitizationError("the system is zero-dimensional; nothing to eliminate")
    r = len(M)
    if F.dim != r - 1:
        raise ImplicitizationError(
            f"image is not a hypersurface: a {F.dim}-dimensional variety mapped to R^{r}")
    cyc = image_cycle(F, M)
    if cyc and rank([v for c in cyc for v in c.rays]) == 0:
        raise ImplicitizationError("image is not a hypersurface")
    P = reconstruct_polytope(Hypersurface.from_image(r, cyc))
    if delta != 1:
        P = divide_polytope(P, delta)
    return P


def divide_polytope(P: Polytope, delta: int) -> Polytope:
    verts = []
    for v in P.vertices:
        q = [Fraction(x, delta) for x in v]
        if any(x.denominator != 1 for x in q):
            raise ImplicitizationError(
                f"degree delta={delta} inconsistent: vertex {v} is not divisible")
        verts.append(tuple(int(x) for x in q))
    return convex_hull(verts)


def implicitize(g: PolynomialSystem, delta: int = 1, threads: int = 1,
                count_points: bool = True) -> ImplicitResult:
    """Newton polytope of the implicit equation of a generic parametrization.

    ``g`` is either ``n`` polynomials in ``n - 1`` parameters, or a system
    already in graph form (``c`` equations in ``2c - 1`` variables whose
    last ``c`` variables are the image coordinates).
    """
    if is_graph_form(g):
        c = g.n_polynomials
        p = g.n_variables
        system = g
        A = tuple(tuple(int(j == c - 1 + i) for j in range(p)) for i in range(c))
    else:
        system, A = build_graph_system(g)
    P = eliminate(system, A, delta, threads)
    return ImplicitResult(P, count_lattice_points(P) if count_points else None)
