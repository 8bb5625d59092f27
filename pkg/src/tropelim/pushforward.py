"""Push a weighted fan forward along an integer linear map.

A source cone ``s`` whose image keeps full dimension contributes its
multiplicity times the lattice index ``[L' : A(L)]``, where ``L`` is the
integer lattice of the span of ``s`` and ``L'`` that of ``A s``.  Image
cones overlap in general; :func:`image_cycle` returns them as they are,
:func:`push_forward` refines them into a proper weighted fan.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .fan import FanError, WeightedFan
from .lattice import (LatticeBasis, dot, lattice_index, primitive, rank,
                      saturated_span_lattice)
from .poly_io import MonomialMap
from .polytope import cone_hrep


class PushforwardError(ValueError):
    pass


@dataclass(frozen=True)
class ImageCone:
    rays: tuple[tuple[int, ...], ...]    # primitive generators in R^r
    weight: int
    span: LatticeBasis                   # saturated lattice of the span


def _as_matrix(A) -> tuple[tuple[int, ...], ...]:
    return A.matrix if isinstance(A, MonomialMap) else tuple(tuple(r) for r in A)


def image_cycle(F: WeightedFan, A) -> list[ImageCone]:
    """Images of the cones of ``F`` that keep dimension, with lattice-index weights.

    The cones may overlap; multiplicities of overlapping cones add up.
    """
    M = _as_matrix(A)
    if len(M[0]) != F.ambient_dim:
        raise PushforwardError(
            f"matrix has {len(M[0])} columns but the fan lives in R^{F.ambient_dim}")
    if F.lineality:
        raise PushforwardError("fans with a lineality space are not supported")
    r = len(M)
    d = F.dim
    if d == 0:
        raise PushforwardError("nothing to push: the fan is zero-dimensional")
    if d > r:
        raise PushforwardError(f"cannot push a {d}-dimensional fan into R^{r}")

    def apply(v):
        return tuple(dot(row, v) for row in M)

    out = []
    for i, m in enumerate(F.multiplicities):
        rays = F.cone_rays(i)
        imgs = [apply(v) for v in rays]
        imgs = [v for v in imgs if any(v)]
        if not imgs or rank(imgs) < d:
            continue
        target = saturated_span_lattice(imgs, r)
        src = saturated_span_lattice(rays, F.ambient_dim)
        idx = lattice_index(target, [apply(b) for b in src.vectors])
        gens = tuple(sorted({primitive(v) for v in imgs}))
        out.append(ImageCone(gens, m * idx, target))
    if not out and F.cones:
        raise PushforwardError(
            "degenerate fiber: every cone drops dimension under the map, "
            "so generic fibers are not finite")
    return out


# ---------------------------------------------------------------------------
# refinement inside one linear span


def _split(rays: list[tuple], h: tuple) -> tuple[list, list] | None:
    """Split a full-dimensional pointed cone by ``h . x = 0`` (None if h does not cut it)."""
    vals = [dot(h, r) for r in rays]
    if min(vals) >= 0 or max(vals) <= 0:
        return None
    data = cone_hrep(rays)
    inc = dict(zip(data.rays, data.ray_facets))
    ext = list(data.rays)
    s = {r: dot(h, r) for r in ext}
    pos = [r for r in ext if s[r] > 0]
    neg = [r for r in ext if s[r] < 0]
    zero = [r for r in ext if s[r] == 0]
    new = []
    for p in pos:
        for n in neg:
            common = inc[p] & inc[n]
            if any(q != p and q != n and common & ~inc[q] == 0 for q in ext):
                continue
            v = tuple(s[p] * b - s[n] * a for a, b in zip(p, n))
            new.append(primitive(v))
    return pos + zero + new, neg + zero + new


def _refine_group(cones: list[tuple[list[tuple], int]], d: int) -> dict[tuple, int]:
    """Common refinement of full-dimensional cones in Z^d; returns piece -> summed weight."""
    hyper: set[tuple] = set()
    for rays, _ in cones:
        if d == 1:
            continue
        for g in cone_hrep(rays).inequalities:
            g = primitive(g)
            hyper.add(max(g, tuple(-x for x in g)))
    hyper_l = sorted(hyper)
    pieces: dict[tuple, int] = {}
    for rays, w in cones:
        todo = [sorted(set(rays))]
        for h in hyper_l:
            nxt = []
            for c in todo:
                sp = _split(c, h)
                if sp is None:
                    nxt.append(c)
                else:
                    nxt.extend(sorted(set(x)) for x in sp)
            todo = nxt
        for c in todo:
            key = tuple(sorted(cone_hrep(c).rays)) if d > 1 else tuple(c)
            pieces[key] = pieces.get(key, 0) + w
    return pieces


def _mergeable(a: tuple, b: tuple, d: int) -> tuple | None:
    """If cones a, b share a facet and their union is a pointed convex cone, return it."""
    common = set(a) & set(b)
    if d > 1 and (len(common) < d - 1 or rank(list(common)) != d - 1):
        return None
    if d == 1:
        return None
    ha, hb = cone_hrep(list(a)), cone_hrep(list(b))
    # the wall must be a facet of both
    if not any(all(dot(g, r) == 0 for r in common) for g in ha.inequalities):
        return None
    for h, other in ((ha, b), (hb, a)):
        for g in h.inequalities:
            if all(dot(g, r) == 0 for r in common):
                continue
            if any(dot(g, r) < 0 for r in other):
                return None
    try:
        merged = cone_hrep(list(a) + list(b))
    except Exception:
        return None
    if merged.dim != d:
        return None
    return tuple(sorted(merged.rays))


def _merge(pieces: dict[tuple, int], d: int) -> dict[tuple, int]:
    changed = True
    pieces = dict(pieces)
    while changed:
        changed = False
        keys = sorted(pieces)
        for i, a in enumerate(keys):
            for b in keys[i + 1:]:
                if pieces[a] != pieces[b]:
                    continue
                u = _mergeable(a, b, d)
                if u is None:
                    continue
                m = pieces.pop(a)
                pieces.pop(b)
                pieces[u] = m
                changed = True
                break
            if changed:
                break
    return pieces


def push_forward(F: WeightedFan, A, delta: int = 1, merge: bool = True) -> WeightedFan:
    """Image of ``F`` under ``A`` as a weighted fan, multiplicities divided by ``delta``."""
    if delta < 1:
        raise PushforwardError("delta must be a positive integer")
    M = _as_matrix(A)
    r = len(M)
    d = F.dim
    cyc = image_cycle(F, M)
    groups: dict[LatticeBasis, list] = {}
    for c in cyc:
        groups.setdefault(c.span, []).append(c)
    result = []
    for L in sorted(groups, key=lambda L: L.vectors):
        members = groups[L]
        local = [([tuple(int(x) for x in L.coordinates(v)) for v in c.rays], c.weight)
                 for c in members]
        pieces = _refine_group(local, d)
        if merge:
            pieces = _merge(pieces, d)
        for key, w in pieces.items():
            q = Fraction(w, delta)
            if q.denominator != 1:
                raise PushforwardError(
                    f"degree delta={delta} inconsistent: multiplicity {w} is not divisible")
            gens = []
            for coords in key:
                v = [0] * r
                for cft, b in zip(coords, L.vectors):
                    v = [x + cft * y for x, y in zip(v, b)]
                gens.append(tuple(v))
            result.append((gens, int(q)))
    try:
        return WeightedFan.from_cones(r, result, d)
    except FanError as e:
        raise PushforwardError(str(e)) from None


def identity_map(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def compare_cycles(F: WeightedFan, G: WeightedFan, probes: Sequence[Sequence[int]]) -> bool:
    """Same multiplicity at each probe point (probes should be generic)."""
    return all(F.multiplicity_at(w) == G.multiplicity_at(w) for w in probes)
