"""Recover a lattice polytope from its tropical hypersurface.

The vertex of ``P`` minimizing a generic ``w`` has ``i``-th coordinate equal
to the weighted number of crossings of the ray ``w + t e_i`` (``t > 0``)
with the hypersurface, each crossing counted as multiplicity times
``|n_i|`` for the primitive normal ``n`` of the crossed cone.  This pins
down the translate of ``P`` that touches every coordinate hyperplane.
The whole polytope is then grown by querying this oracle in the inner
normal direction of each tentative facet until all facets are certified.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from .fan import WeightedFan
from .lattice import dot, integer_kernel, primitive
from .polytope import Polytope, convex_hull, cone_hrep
from .pushforward import ImageCone


class ReconstructionError(ValueError):
    pass


class NonGenericDirection(ReconstructionError):
    pass


@dataclass(frozen=True)
class Hypersurface:
    """Codimension-one cones as (normal, inequalities, weight) triples.

    Cones may overlap; weights of overlapping cones add.
    """

    ambient_dim: int
    normals: tuple[tuple[int, ...], ...]
    inequalities: tuple[tuple[tuple[int, ...], ...], ...]
    weights: tuple[int, ...]

    @classmethod
    def from_cones(cls, n: int, cones: Iterable[tuple[Sequence[Sequence[int]], int]]):
        normals, ineqs, weights = [], [], []
        for rays, m in cones:
            rays = [tuple(r) for r in rays]
            h = cone_hrep(rays)
            if h.dim != n - 1:
                raise ReconstructionError(
                    f"cone of dimension {h.dim} in a fan that should have dimension {n - 1}")
            ker = integer_kernel(rays, n)
            normals.append(primitive(ker[0]))
            ineqs.append(tuple(h.inequalities))
            weights.append(m)
        return cls(n, tuple(normals), tuple(ineqs), tuple(weights))

    @classmethod
    def from_fan(cls, F: WeightedFan) -> "Hypersurface":
        if F.dim != F.ambient_dim - 1:
            raise ReconstructionError(
                f"image is not a hypersurface: fan of dimension {F.dim} in R^{F.ambient_dim}")
        if F.lineality:
            F = expand_lineality(F)
        return cls.from_cones(F.ambient_dim,
                              [(F.cone_rays(i), m) for i, m in enumerate(F.multiplicities)])

    @classmethod
    def from_image(cls, n: int, cones: Sequence[ImageCone]) -> "Hypersurface":
        if cones and cones[0].span.rank != n - 1:
            raise ReconstructionError(
                f"image is not a hypersurface: cones of dimension {cones[0].span.rank} in R^{n}")
        return cls.from_cones(n, [(c.rays, c.weight) for c in cones])

    def width_bounds(self) -> list[int]:
        """Upper bound on the extent of the polytope along each axis."""
        return [sum(m * abs(nv[i]) for nv, m in zip(self.normals, self.weights))
                for i in range(self.ambient_dim)]


def expand_lineality(F: WeightedFan) -> WeightedFan:
    # a lineality direction l becomes the two rays +l and -l
    lin = [tuple(v) for v in F.lineality]
    cones = []
    for i, m in enumerate(F.multiplicities):
        base = F.cone_rays(i)
        _add_lineality(base, lin, m, cones)
    return WeightedFan.from_cones(F.ambient_dim, cones, F.dim)


def _add_lineality(base, lin, m, out):
    # split a cone plus lineality into pointed pieces by orthant of the lineality
    if not lin:
        out.append((base, m))
        return
    l, rest = lin[0], lin[1:]
    _add_lineality(base + [l], rest, m, out)
    _add_lineality(base + [tuple(-x for x in l)], rest, m, out)


def vertex_oracle(H: Hypersurface | WeightedFan, w: Sequence[int]) -> tuple[int, ...]:
    """Vertex of the dual polytope minimizing ``w``, canonically placed.

    Raises ``NonGenericDirection`` when some ray touches a cone boundary.
    """
    if isinstance(H, WeightedFan):
        H = Hypersurface.from_fan(H)
    n = H.ambient_dim
    if len(w) != n:
        raise ReconstructionError("direction has the wrong length")
    v = kernels.ray_crossings(H.normals, H.inequalities, H.weights, tuple(w))
    if v is None:
        raise NonGenericDirection(f"direction {tuple(w)} is not generic for this fan")
    return tuple(v)


def _query(H: Hypersurface, a: Sequence[int] | None, rng: random.Random,
           bounds: Sequence[int], tries: int = 60):
    """Oracle answer for ``(R + 1) a + r`` with a small random ``r``.

    ``R`` bounds ``|r . (x - y)|`` over the polytope, so for integer ``a``
    the answer lies in the face minimizing ``a``.  With ``a`` None the
    direction is just ``r``.  Degenerate draws are retried.
    """
    n = H.ambient_dim
    for attempt in range(tries):
        mag = 1 << (4 + attempt // 4)
        r = [rng.randint(-mag, mag) for _ in range(n)]
        if a is None:
            w = r
        else:
            K = sum(abs(x) * b for x, b in zip(r, bounds)) + 1
            w = [K * b + x for b, x in zip(a, r)]
        try:
            return vertex_oracle(H, w)
        except NonGenericDirection:
            continue
    raise ReconstructionError("could not find a generic direction; the fan may be degenerate")


def reconstruct_polytope(F: Hypersurface | WeightedFan, seed: int = 0x5EED,
                         max_queries: int = 100000) -> Polytope:
    """The lattice polytope whose tropical hypersurface is ``F``."""
    H = Hypersurface.from_fan(F) if isinstance(F, WeightedFan) else F
    n = H.ambient_dim
    if not H.normals:
        return convex_hull([(0,) * n])
    rng = random.Random(seed)
    bounds = H.width_bounds()
    verts = {_query(H, None, rng, bounds)}
    confirmed: set[tuple] = set()
    queries = 1
    while True:
        Q = convex_hull(sorted(verts))
        todo = [(a0, a) for a0, a in Q.facets]
        for a0, a in Q.equations:
            todo.append((a0, a))
            todo.append((-a0, tuple(-x for x in a)))
        todo = [f for f in todo if f not in confirmed]
        if not todo:
            return Q
        grew = False
        for a0, a in todo:
            queries += 1
            if queries > max_queries:
                raise ReconstructionError(
                    f"gave up after {max_queries} oracle queries ({len(verts)} vertices found)")
            v = _query(H, a, rng, bounds)
            val = a0 + dot(a, v)
            if val == 0:
                confirmed.add((a0, a))
            elif val < 0:
                verts.add(v)
                grew = True
            else:
                raise ReconstructionError(
                    "fan is not the tropicalization of a polytope: oracle answer "
                    f"{v} lies strictly inside the known facet {(a0, a)}")
        if not grew and all(f in confirmed for f in todo):
            return Q


def canonical_translate(P: Polytope) -> Polytope:
    """Translate so the minimum of every coordinate over ``P`` is zero."""
    t = [-min(v[i] for v in P.vertices) for i in range(P.ambient_dim)]
    return P.translate(t)
