"""Exact convex polytopes and polyhedral cones.

Hulls are built with a beneath-beyond insertion over integer coordinates.
Rational input is scaled to a common denominator first, so no floating
point is ever involved.  Facets are stored as ``(a0, a)`` meaning
``a0 + a . x >= 0`` (inner normals); lower-dimensional polytopes also carry
their affine-hull equations ``a0 + a . x == 0``.

Faces are represented as bitmasks over the (sorted) vertex list.  The face
lattice is derived purely combinatorially from the vertex/facet incidences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import factorial, gcd, lcm
from typing import Iterable, Sequence

from . import kernels
from .lattice import (
    LatticeBasis,
    determinant,
    dot,
    echelon_pivots,
    integer_kernel,
    primitive,
    rank,
    saturated_span_lattice,
    vector_gcd,
)

Point = tuple
Inequality = tuple  # (a0, a)


class PolytopeError(ValueError):
    pass


def bits(mask: int):
    """Indices of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _normalize_point(p) -> tuple:
    out = []
    for x in p:
        if isinstance(x, Fraction) and x.denominator == 1:
            out.append(int(x))
        elif isinstance(x, (int, Fraction)):
            out.append(x)
        else:
            out.append(Fraction(x))
    return tuple(out)


def _primitive_row(a0, a) -> Inequality:
    g = reduce(gcd, a, abs(a0))
    if g > 1:
        return a0 // g, tuple(x // g for x in a)
    return a0, tuple(a)


@dataclass(eq=False)
class Polytope:
    """A convex polytope with both V- and H-representation.

    ``incidence[i]`` is the bitmask of vertices lying on ``facets[i]``.
    """

    ambient_dim: int
    vertices: tuple[Point, ...]
    facets: tuple[Inequality, ...]
    equations: tuple[Inequality, ...]
    dim: int
    incidence: tuple[int, ...]
    _faces: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        return (f"Polytope(dim={self.dim}, ambient_dim={self.ambient_dim}, "
                f"n_vertices={len(self.vertices)}, n_facets={len(self.facets)})")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def all_vertices_mask(self) -> int:
        return (1 << len(self.vertices)) - 1

    @cached_property
    def is_lattice(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    def contains(self, x: Sequence) -> bool:
        return (all(a0 + dot(a, x) >= 0 for a0, a in self.facets)
                and all(a0 + dot(a, x) == 0 for a0, a in self.equations))

    def faces(self, k: int) -> list[int]:
        """All ``k``-dimensional faces as vertex bitmasks (sorted)."""
        if k < 0 or k > self.dim:
            return []
        if not self._faces:
            self._faces[self.dim] = [self.all_vertices_mask]
            if self.dim >= 1:
                self._faces[self.dim - 1] = sorted(set(self.incidence))
        level = min(self._faces)
        while level > k:
            self._faces[level - 1] = kernels.subfaces(self._faces[level], self.incidence)
            level -= 1
        return self._faces[k]

    def f_vector(self) -> list[int]:
        return [len(self.faces(k)) for k in range(self.dim)]

    def face_vertices(self, mask: int) -> list[Point]:
        return [self.vertices[i] for i in bits(mask)]

    def facets_containing(self, mask: int) -> list[int]:
        return [i for i, inc in enumerate(self.incidence) if mask & ~inc == 0]

    def translate(self, t: Sequence) -> "Polytope":
        return convex_hull([tuple(x + y for x, y in zip(v, t)) for v in self.vertices])


# ---------------------------------------------------------------------------
# convex hull


def _hyperplane_through(pts: Sequence[Sequence[int]]) -> tuple[int, ...]:
    base = pts[0]
    diffs = [[x - y for x, y in zip(p, base)] for p in pts[1:]]
    ker = integer_kernel(diffs, len(base))
    if len(ker) != 1:
        raise PolytopeError("points do not span a hyperplane")
    return primitive(ker[0])


def _hull_full(P: list[tuple[int, ...]], d: int, initial: list[int]):
    """Beneath-beyond hull of integer points affinely spanning R^d (d >= 2).

    ``initial`` are indices of d+1 affinely independent points.
    Returns (vertex indices, [(b, a, point mask)]).
    """
    n = len(P)
    interior = [sum(P[i][j] for i in initial) for j in range(d)]
    scale = d + 1
    normals: dict[int, tuple] = {}
    offsets: dict[int, int] = {}
    vsets: dict[int, int] = {}
    pf = [0] * n
    next_id = 0

    def add(a, b, vm):
        nonlocal next_id
        fid = next_id
        next_id += 1
        normals[fid] = a
        offsets[fid] = b
        vsets[fid] = vm
        bit = 1 << fid
        for p in bits(vm):
            pf[p] |= bit

    for i in initial:
        others = [j for j in initial if j != i]
        a = _hyperplane_through([P[j] for j in others])
        b = -dot(a, P[others[0]])
        if dot(a, interior) + scale * b < 0:
            a = tuple(-x for x in a)
            b = -b
        add(a, b, sum(1 << j for j in others))

    # far points first: the partial hull then covers most of the rest early,
    # so fewer short-lived facets get built
    tot = [sum(p[j] for p in P) for j in range(d)]
    init_set = set(initial)
    rest = [k for k in range(n) if k not in init_set]
    rest.sort(key=lambda k: (-sum((n * P[k][j] - tot[j]) ** 2 for j in range(d)), k))
    for k in rest:
        q = P[k]
        ids = list(normals)
        svals = kernels.evaluate_facets([normals[f] for f in ids], [offsets[f] for f in ids], q)
        sval = dict(zip(ids, svals))
        vis = [f for f, s in sval.items() if s < 0]
        if not vis:
            continue
        vismask = 0
        for f in vis:
            vismask |= 1 << f
        new = []
        for F, G, inter in kernels.horizon_ridges(vis, vismask, vsets, pf):
            sG = sval[G]
            if sG == 0:
                continue
            sF = sval[F]
            a = [sG * x - sF * y for x, y in zip(normals[F], normals[G])]
            b = sG * offsets[F] - sF * offsets[G]
            g = vector_gcd(a)
            new.append((tuple(x // g for x in a), b // g, inter | (1 << k)))
        for F in vis:
            bit = ~(1 << F)
            for p in bits(vsets[F]):
                pf[p] &= bit
            del normals[F], offsets[F], vsets[F]
        kbit = 1 << k
        for G, s in sval.items():
            if s == 0:
                vsets[G] |= kbit
                pf[k] |= 1 << G
        for a, b, vm in new:
            add(a, b, vm)

    verts = []
    for p in range(n):
        if not pf[p]:
            continue
        common = -1
        for f in bits(pf[p]):
            common &= vsets[f]
        if common == 1 << p:
            verts.append(p)
    return verts, [(offsets[f], normals[f], vsets[f]) for f in normals]


def convex_hull(points: Iterable[Sequence]) -> Polytope:
    """Exact convex hull of a finite point set (any dimension)."""
    pts = sorted(set(_normalize_point(p) for p in points))
    if not pts:
        raise PolytopeError("convex hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise PolytopeError("points of mixed dimension")
    den = 1
    for p in pts:
        for x in p:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
    if den == 1:
        Z = pts
    else:
        Z = [tuple(int(x * den) for x in p) for p in pts]
    base = Z[0]
    diffs = [tuple(x - y for x, y in zip(p, base)) for p in Z]
    chosen, pivots = echelon_pivots(diffs)
    d = len(pivots)
    eqs = []
    if d < n:
        for e in integer_kernel([diffs[i] for i in chosen] or [[0] * n], n):
            e = primitive(e)
            eqs.append(_primitive_row(-dot(e, base), tuple(den * x for x in e)))

    def lift(b, a_proj):
        a = [0] * n
        for c, x in zip(pivots, a_proj):
            a[c] = x
        return _primitive_row(b, tuple(den * x for x in a))

    if d == 0:
        return Polytope(n, (pts[0],), (), tuple(sorted(eqs)), 0, ())
    Y = [tuple(p[c] for c in pivots) for p in Z]
    if d == 1:
        lo = min(range(len(Y)), key=lambda i: Y[i])
        hi = max(range(len(Y)), key=lambda i: Y[i])
        vidx = sorted({lo, hi})
        raw = [(-Y[lo][0], (1,), 1 << lo), (Y[hi][0], (-1,), 1 << hi)]
    else:
        initial = [0] + [i for i in chosen if i != 0]
        vidx, raw = _hull_full(Y, d, initial)
        vidx = sorted(vidx)
    remap = {old: new for new, old in enumerate(vidx)}
    facets = []
    for b, a, vm in raw:
        inc = 0
        for p in bits(vm):
            if p in remap:
                inc |= 1 << remap[p]
        facets.append((lift(b, a), inc))
    facets.sort()
    return Polytope(
        ambient_dim=n,
        vertices=tuple(pts[i] for i in vidx),
        facets=tuple(f for f, _ in facets),
        equations=tuple(sorted(eqs)),
        dim=d,
        incidence=tuple(inc for _, inc in facets),
    )


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.ambient_dim != Q.ambient_dim:
        raise PolytopeError(f"ambient dimensions differ: {P.ambient_dim} vs {Q.ambient_dim}")
    return convex_hull(
        tuple(x + y for x, y in zip(u, v)) for u in P.vertices for v in Q.vertices)


def minkowski_sum_all(polytopes: Sequence[Polytope]) -> Polytope:
    return reduce(minkowski_sum, polytopes)


def face_vertices_in_direction(vertices: Sequence[Point], w: Sequence) -> list[Point]:
    vals = [dot(w, v) for v in vertices]
    m = min(vals)
    return [v for v, x in zip(vertices, vals) if x == m]


def face_in_direction(P: Polytope, w: Sequence) -> Polytope:
    """Face of ``P`` minimizing ``w . x`` (inner-normal convention)."""
    if len(w) != P.ambient_dim:
        raise PolytopeError("direction has the wrong length")
    return convex_hull(face_vertices_in_direction(P.vertices, w))


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class Cone:
    """Pointed polyhedral cone generated by primitive integer rays."""

    ambient_dim: int
    rays: tuple[tuple[int, ...], ...]
    lineality: LatticeBasis | None = None

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]]) -> "Cone":
        gens = sorted({primitive(g) for g in gens if any(g)})
        if not gens:
            raise PolytopeError("a cone needs at least one non-zero generator")
        n = len(gens[0])
        data = cone_hrep(gens)
        return cls(n, tuple(sorted(data.rays)))

    @cached_property
    def hrep(self) -> "ConeData":
        return cone_hrep(self.rays)

    @property
    def dim(self) -> int:
        return self.hrep.dim

    def relative_interior_point(self) -> tuple[int, ...]:
        return tuple(map(sum, zip(*self.rays)))

    def contains(self, x: Sequence) -> bool:
        h = self.hrep
        return (all(dot(e, x) == 0 for e in h.equations)
                and all(dot(g, x) >= 0 for g in h.inequalities))

    def contains_relint(self, x: Sequence) -> bool:
        h = self.hrep
        return (all(dot(e, x) == 0 for e in h.equations)
                and all(dot(g, x) > 0 for g in h.inequalities))


@dataclass(frozen=True)
class ConeData:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    inequalities: tuple[tuple[int, ...], ...]   # g . x >= 0, one per facet
    equations: tuple[tuple[int, ...], ...]      # e . x == 0, span of the cone
    ray_facets: tuple[int, ...]                 # per ray: bitmask over inequalities


def cone_hrep(gens: Sequence[Sequence[int]]) -> ConeData:
    """Facets, span equations and extreme rays of a pointed cone."""
    gens = sorted({primitive(g) for g in gens if any(g)})
    n = len(gens[0])
    origin = (0,) * n
    k = rank(gens)
    if k == 1:
        if len(gens) > 1:
            raise PolytopeError("cone contains a line")
        eqs = tuple(primitive(e) for e in integer_kernel(gens, n))
        return ConeData(1, tuple(gens), (gens[0],), eqs, (0,))
    H = convex_hull([origin] + gens)
    if H.dim != k or origin not in H.vertices:
        raise PolytopeError("cone is not pointed")
    ineqs = tuple(a for a0, a in H.facets if a0 == 0)
    eqs = tuple(a for _, a in H.equations)
    inc = []
    for r in gens:
        m = 0
        for j, g in enumerate(ineqs):
            if dot(g, r) == 0:
                m |= 1 << j
        inc.append(m)
    rays, ray_inc = [], []
    for i, r in enumerate(gens):
        if any(j != i and inc[i] & ~inc[j] == 0 for j in range(len(gens))):
            continue
        rays.append(r)
        ray_inc.append(inc[i])
    return ConeData(k, tuple(rays), ineqs, eqs, tuple(ray_inc))


def normal_cone_rays(P: Polytope, mask: int) -> list[tuple[int, ...]]:
    """Inner facet normals of the facets containing the face ``mask``."""
    return [P.facets[i][1] for i in P.facets_containing(mask)]


def normal_fan_skeleton(P: Polytope, d: int) -> list[tuple[Cone, tuple[int, ...]]]:
    """All ``d``-dimensional cones of the inner normal fan of ``P``.

    Each cone comes with the sum of its rays, a point in its relative
    interior whose minimizing face on ``P`` is exactly the dual face.
    """
    if not P.is_full_dimensional:
        raise PolytopeError(
            "normal fan of a lower-dimensional polytope has a lineality space; "
            "pass the polytope in coordinates of its affine hull instead")
    if not 0 <= d <= P.ambient_dim:
        raise PolytopeError(f"cone dimension {d} out of range")
    if d == 0:
        return [(Cone(P.ambient_dim, ()), (0,) * P.ambient_dim)]
    out = []
    for mask in P.faces(P.ambient_dim - d):
        rays = sorted(normal_cone_rays(P, mask))
        w = tuple(map(sum, zip(*rays)))
        out.append((Cone(P.ambient_dim, tuple(rays)), w))
    return out


# ---------------------------------------------------------------------------
# lattice points, volumes


def _box(P: Polytope):
    lo, hi = [], []
    for j in range(P.ambient_dim):
        xs = [v[j] for v in P.vertices]
        lo.append(-((-min(xs)) // 1) if isinstance(min(xs), Fraction) else min(xs))
        hi.append(max(xs) // 1 if isinstance(max(xs), Fraction) else max(xs))
    return [int(x) for x in lo], [int(x) for x in hi]


def _constraints(P: Polytope):
    rows = [(a0, a) for a0, a in P.facets]
    for a0, a in P.equations:
        rows.append((a0, a))
        rows.append((-a0, tuple(-x for x in a)))
    return rows


def lattice_points(P: Polytope) -> list[tuple[int, ...]]:
    """All integer points of ``P`` (bounding-box scan, exact tests)."""
    lo, hi = _box(P)
    return kernels.box_lattice_points(_constraints(P), lo, hi, count_only=False)


def count_lattice_points(P: Polytope) -> int:
    lo, hi = _box(P)
    return kernels.box_lattice_points(_constraints(P), lo, hi, count_only=True)


def _triangulate(mask: int, k: int, incidence: Sequence[int], memo: dict) -> list[tuple[int, ...]]:
    key = mask
    if key in memo:
        return memo[key]
    if popcount(mask) == k + 1:
        out = [tuple(bits(mask))]
    else:
        v0 = (mask & -mask).bit_length() - 1
        subs = kernels.subfaces([mask], incidence)
        out = []
        for H in subs:
            if H >> v0 & 1:
                continue
            for t in _triangulate(H, k - 1, incidence, memo):
                out.append((v0,) + t)
    memo[key] = out
    return out


def pulling_triangulation(P: Polytope) -> list[tuple[int, ...]]:
    """Simplices (as vertex index tuples) of a pulling triangulation."""
    if P.dim == 0:
        return [(0,)]
    return _triangulate(P.all_vertices_mask, P.dim, P.incidence, {})


def _full_dim_normalized_volume(P: Polytope):
    """d! * Euclidean volume of a full-dimensional polytope."""
    d = P.dim
    V = P.vertices
    if d == 1:
        return V[-1][0] - V[0][0]
    if d == 2:
        return _area2(V)
    total = 0
    for simplex in pulling_triangulation(P):
        v0 = V[simplex[0]]
        M = [[x - y for x, y in zip(V[i], v0)] for i in simplex[1:]]
        total += abs(determinant(M))
    return total


def _area2(points: Sequence[Point]):
    """Twice the area of the convex hull of planar points."""
    hull = planar_hull(points)
    s = 0
    for i in range(len(hull)):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % len(hull)]
        s += x1 * y2 - x2 * y1
    return abs(s)


def planar_hull(points: Iterable[Point]) -> list[Point]:
    """Counter-clockwise hull vertices of planar points (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def lattice_coordinates(points: Sequence[Point], L: LatticeBasis, origin: Point | None = None):
    """Coordinates of ``points - origin`` in the basis of ``L``."""
    if origin is None:
        origin = points[0]
    out = []
    for p in points:
        c = L.coordinates([x - y for x, y in zip(p, origin)])
        if c is None:
            raise PolytopeError("affine hull is not parallel to the lattice span")
        out.append(tuple(int(x) if x.denominator == 1 else x for x in c))
    return out


def normalized_volume(P: Polytope, L: LatticeBasis | None = None):
    """Lattice-normalized volume: the unit simplex of ``L`` has volume 1."""
    if L is None:
        if P.dim == 0:
            return 1
        L = saturated_span_lattice(
            [tuple(x - y for x, y in zip(v, P.vertices[0])) for v in P.vertices],
            P.ambient_dim)
    coords = lattice_coordinates(P.vertices, L)
    if P.dim < L.rank:
        return 0
    if L.rank == 0:
        return 1
    return _full_dim_normalized_volume(convex_hull(coords))


def edge_lattice_length(u: Point, v: Point):
    diff = [x - y for x, y in zip(v, u)]
    if all(isinstance(x, int) for x in diff):
        return vector_gcd(diff)
    den = reduce(lcm, (Fraction(x).denominator for x in diff), 1)
    return Fraction(vector_gcd([int(x * den) for x in diff]), den)


# ---------------------------------------------------------------------------
# mixed volume


def _direction_rank(point_sets: Sequence[Sequence[Point]]) -> int:
    rows = []
    for pts in point_sets:
        base = pts[0]
        rows.extend(tuple(x - y for x, y in zip(p, base)) for p in pts[1:])
    return rank(rows) if rows else 0


def dimension_criterion(point_sets: Sequence[Sequence[Point]]) -> bool:
    """True iff every non-empty subfamily J has Minkowski sum of dim >= |J|."""
    c = len(point_sets)
    for size in range(1, c + 1):
        for J in itertools.combinations(range(c), size):
            if _direction_rank([point_sets[j] for j in J]) < size:
                return False
    return True


def _points_volume(point_sets: Sequence[Sequence[Point]], c: int):
    """Euclidean volume times c! of the Minkowski sum of the given point sets."""
    pts = [tuple([0] * c)]
    for S in point_sets:
        pts = {tuple(x + y for x, y in zip(p, s)) for p in pts for s in S}
    if c == 1:
        xs = [p[0] for p in pts]
        return max(xs) - min(xs)
    if c == 2:
        return _area2(list(pts))
    H = convex_hull(pts)
    if H.dim < c:
        return 0
    return _full_dim_normalized_volume(H)


def mixed_volume_points(point_sets: Sequence[Sequence[Point]]):
    """Mixed volume of the hulls of ``c`` point sets in R^c.

    Normalized so that ``MV(P, ..., P)`` is the lattice-normalized volume of
    ``P``; for lattice polytopes this is the Bernstein root count.
    """
    c = len(point_sets)
    sets = [sorted(set(map(tuple, S))) for S in point_sets]
    if any(len(S) == 1 for S in sets):
        return 0
    if not dimension_criterion(sets):
        return 0
    if all(len(S) == 2 for S in sets):
        # generic mixed cell: every face is a segment
        M = [[x - y for x, y in zip(S[1], S[0])] for S in sets]
        return abs(determinant(M))
    if c == 1:
        return max(p[0] for p in sets[0]) - min(p[0] for p in sets[0])
    total = 0
    for size in range(1, c + 1):
        sign = (-1) ** (c - size)
        for J in itertools.combinations(range(c), size):
            total += sign * _points_volume([sets[j] for j in J], c)
    # ``_points_volume`` is c! * vol, and the mixed volume is sum(+-vol).
    result = Fraction(total, factorial(c))
    return int(result) if result.denominator == 1 else result


def mixed_volume(polytopes: Sequence[Polytope]):
    c = len(polytopes)
    if c == 0:
        raise PolytopeError("mixed volume of an empty family")
    if any(P.ambient_dim != c for P in polytopes):
        raise PolytopeError("mixed volume needs c polytopes in R^c")
    return mixed_volume_points([P.vertices for P in polytopes])
