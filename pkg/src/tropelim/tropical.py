"""Tropical varieties of generic complete intersections.

For generic coefficients the tropical variety of ``f_1 = ... = f_c = 0``
is a union of cones of the normal fan of ``P_1 + ... + P_c``.  A cone of
dimension ``p - c`` with interior point ``w`` belongs to it exactly when
the faces ``face_w(P_i)`` have positive mixed volume, and that mixed
volume (taken in the lattice parallel to their sum) is its multiplicity.
"""

from __future__ import annotations

from functools import partial

from .fan import WeightedFan
from .lattice import saturated_span_lattice
from .poly_io import PolynomialSystem
from .polytope import (Polytope, PolytopeError, convex_hull, face_vertices_in_direction,
                       lattice_coordinates, minkowski_sum_all, mixed_volume, mixed_volume_points,
                       normal_fan_skeleton)
from ._parallel import pmap


class TropicalError(ValueError):
    pass


def newton_polytopes(system: PolynomialSystem) -> list[Polytope]:
    return [convex_hull(S) for S in system.supports]


def face_multiplicity(polytopes, w, face_points=None) -> int:
    """Mixed volume of ``face_w(P_1), ..., face_w(P_c)`` in their own lattice."""
    faces = [face_vertices_in_direction(P.vertices, w) for P in polytopes]
    if face_points is None:
        base = [f[0] for f in faces]
        dirs = [tuple(x - y for x, y in zip(v, b)) for f, b in zip(faces, base) for v in f]
    else:
        dirs = [tuple(x - y for x, y in zip(v, face_points[0])) for v in face_points]
    dirs = [d for d in dirs if any(d)]
    c = len(polytopes)
    if not dirs:
        return 0
    L = saturated_span_lattice(dirs, len(w))
    if L.rank != c:
        return 0
    coords = [lattice_coordinates(f, L) for f in faces]
    return mixed_volume_points(coords)


def _cone_job(polytopes, item):
    rays, w, gverts = item
    return face_multiplicity(polytopes, w, gverts)


def tropical_complete_intersection(system: PolynomialSystem | list, threads: int = 1):
    """Weighted tropical variety of a generic complete intersection.

    Accepts a ``PolynomialSystem`` or a list of ``Polytope``.  Returns a
    ``WeightedFan`` of dimension ``p - c``, or the mixed volume (an int)
    when ``c == p``.
    """
    if isinstance(system, PolynomialSystem):
        polys = newton_polytopes(system)
        p = system.n_variables
    else:
        polys = list(system)
        p = polys[0].ambient_dim
    c = len(polys)
    if c == 0:
        raise TropicalError("no polynomials given")
    if c > p:
        raise TropicalError(f"{c} polynomials in {p} variables: more equations than unknowns")
    if c == p:
        return mixed_volume(polys)
    S = minkowski_sum_all(polys)
    if not S.is_full_dimensional:
        raise TropicalError(
            "the Minkowski sum of the Newton polytopes is not full-dimensional; "
            "rewrite the system in coordinates of the saturated lattice spanned by its supports")
    d = p - c
    try:
        skeleton = normal_fan_skeleton(S, d)
    except PolytopeError as e:
        raise TropicalError(str(e)) from None
    # the dual face of each cone is face_w(S); its vertices fix the lattice
    items = []
    for cone, w in skeleton:
        gverts = face_vertices_in_direction(S.vertices, w)
        items.append((cone.rays, w, gverts))
    mults = pmap(partial(_cone_job, polys), items, threads)
    cones = [(rays, m) for (rays, _, _), m in zip(items, mults) if m > 0]
    return WeightedFan.from_cones(p, cones, d)
