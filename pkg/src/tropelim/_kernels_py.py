"""Pure-Python implementations of the hot inner loops.

``tropelim.kernels`` re-exports either these or the compiled versions from
``tropelim._ckernels``; both must return identical results.
"""

from __future__ import annotations

import itertools


def evaluate_facets(normals, offsets, q):
    """``a . q + b`` for every facet ``(a, b)``."""
    return [sum(x * y for x, y in zip(a, q)) + b for a, b in zip(normals, offsets)]


def _popcount(m):
    return bin(m).count("1")


def _bits(m):
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def horizon_ridges(visible, visible_mask, vsets, point_facets):
    """Ridges between a visible facet and an invisible neighbour.

    ``vsets[f]`` is the point mask of facet ``f`` and ``point_facets[p]`` the
    facet mask of point ``p``.  Two facets are adjacent when exactly they
    two contain every point of their intersection.  Returns
    ``(F, G, intersection_mask)`` triples.
    """
    out = []
    for F in visible:
        vF = vsets[F]
        cand = 0
        for p in _bits(vF):
            cand |= point_facets[p]
        cand &= ~visible_mask
        pair_base = 1 << F
        for G in _bits(cand):
            inter = vF & vsets[G]
            common = -1
            for p in _bits(inter):
                common &= point_facets[p]
            if common == pair_base | (1 << G):
                out.append((F, G, inter))
    return out


def subfaces(faces, incidence):
    """Facets of every face in ``faces`` (vertex bitmasks), deduplicated and sorted.

    The facets of a face G are the inclusion-maximal proper non-empty
    intersections of G with the facets of the whole polytope.
    """
    out = set()
    for G in faces:
        cands = set()
        for F in incidence:
            inter = G & F
            if inter and inter != G:
                cands.add(inter)
        kept = []
        for inter in sorted(cands, key=_popcount, reverse=True):
            for K in kept:
                if inter & ~K == 0:
                    break
            else:
                kept.append(inter)
        out.update(kept)
    return sorted(out)


def box_lattice_points(rows, lo, hi, count_only=False):
    """Integer points of ``{x : a0 + a . x >= 0 for (a0, a) in rows}`` inside a box.

    The first n-1 coordinates are scanned; the admissible range of the last
    coordinate is then solved for directly.
    """
    n = len(lo)
    last = n - 1
    split = [(a0, a[:last], a[last]) for a0, a in rows]
    total = 0
    points = []
    for prefix in itertools.product(*(range(lo[j], hi[j] + 1) for j in range(last))):
        lower, upper = lo[last], hi[last]
        for a0, a, an in split:
            s = a0
            for x, y in zip(a, prefix):
                s += x * y
            if an == 0:
                if s < 0:
                    upper = lower - 1
                    break
            elif an > 0:
                b = -(s // an)
                if b > lower:
                    lower = b
            else:
                b = s // -an
                if b < upper:
                    upper = b
            if upper < lower:
                break
        if upper < lower:
            continue
        if count_only:
            total += upper - lower + 1
        else:
            points.extend(prefix + (x,) for x in range(lower, upper + 1))
    return total if count_only else points


def ray_crossings(normals, inequalities, weights, w):
    """Weighted crossings of the rays ``w + t e_i`` (t > 0) with codim-1 cones.

    Entry ``i`` of the result sums ``m * |n_i|`` over crossed cones.  Returns
    None if some ray meets a cone boundary or ``w`` lies on a cone's
    hyperplane.
    """
    n = len(w)
    out = [0] * n
    for nv, ineqs, m in zip(normals, inequalities, weights):
        nw = 0
        for x, y in zip(nv, w):
            nw += x * y
        if nw == 0:
            return None
        for i in range(n):
            ni = nv[i]
            if ni == 0 or (nw > 0) == (ni > 0):
                continue
            # crossing point times n_i: X = n_i w - (n.w) e_i
            sgn = 1 if ni > 0 else -1
            hit = True
            for g in ineqs:
                s = 0
                for x, y in zip(g, w):
                    s += x * y
                s = sgn * (ni * s - nw * g[i])
                if s < 0:
                    hit = False
                    break
                if s == 0:
                    return None
            if hit:
                out[i] += m * (ni if ni > 0 else -ni)
    return out
