# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled versions of the functions in ``_kernels_py``.

Integer work runs in 64-bit machine integers when a cheap magnitude bound
shows it cannot overflow; otherwise the Python implementation is used.
Results are identical to the fallback in every case.
"""

from libc.stdlib cimport malloc, free

from . import _kernels_py as _py

cdef long long _LIMIT = 1LL << 62


cdef inline int _fits(object x, long long bound):
    return -bound <= x <= bound


def evaluate_facets(normals, offsets, q):
    cdef Py_ssize_t m = len(normals), n = len(q), i, j
    cdef long long s
    cdef bint ok
    if n > 64:
        return _py.evaluate_facets(normals, offsets, q)
    for x in q:
        if not isinstance(x, int) or not _fits(x, 1 << 28):
            return _py.evaluate_facets(normals, offsets, q)
    cdef long long *qv = <long long *> malloc(n * sizeof(long long))
    out = [None] * m
    try:
        for j in range(n):
            qv[j] = q[j]
        for i in range(m):
            a = normals[i]
            b = offsets[i]
            ok = _fits(b, 1 << 60)
            s = b if ok else 0
            if ok:
                for j in range(n):
                    x = a[j]
                    if not _fits(x, 1 << 28):
                        ok = False
                        break
                    s += (<long long> x) * qv[j]
            out[i] = s if ok else _py.evaluate_facets([a], [b], q)[0]
    finally:
        free(qv)
    return out


cdef list _bits(object m):
    cdef list out = []
    cdef object low
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def horizon_ridges(visible, visible_mask, vsets, point_facets):
    cdef list out = []
    cdef object vF, cand, inter, common, target
    cdef list pf = point_facets
    cdef Py_ssize_t p
    not_vis = ~visible_mask
    for F in visible:
        vF = vsets[F]
        cand = 0
        for p in _bits(vF):
            cand |= pf[p]
        cand &= not_vis
        for G in _bits(cand):
            inter = vF & vsets[G]
            target = (1 << F) | (1 << G)
            common = -1
            # F and G contain every point of inter, so once the AND reaches
            # target it stays there
            for p in _bits(inter):
                common &= pf[p]
                if common == target:
                    break
            if common == target:
                out.append((F, G, inter))
    return out


def subfaces(faces, incidence):
    cdef set out = set()
    cdef list kept
    cdef object inter, G
    cdef list inc = list(incidence)
    for G in faces:
        cands = set()
        for F in inc:
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


def _popcount(m):
    return bin(m).count("1")


cdef inline long long _floordiv(long long a, long long b):
    # cdivision=False gives Python floor semantics on C integers
    return a // b


def box_lattice_points(rows, lo, hi, count_only=False):
    cdef Py_ssize_t n = len(lo), m = len(rows), last, i, j, k
    if n == 0 or m == 0:
        return _py.box_lattice_points(rows, lo, hi, count_only)
    last = n - 1
    # magnitude guard: |a0| + sum |a_j| * max|x_j| must stay far below 2^62
    cdef long long span = 0
    for j in range(n):
        b = max(abs(lo[j]), abs(hi[j]))
        if b > (1 << 30):
            return _py.box_lattice_points(rows, lo, hi, count_only)
        if b > span:
            span = b
    for a0, a in rows:
        tot = abs(a0) + sum(abs(x) for x in a) * span
        if tot > (1 << 60):
            return _py.box_lattice_points(rows, lo, hi, count_only)
    if not count_only:
        return _py.box_lattice_points(rows, lo, hi, count_only)
    cells = 1
    for j in range(n):
        cells *= max(0, hi[j] - lo[j] + 1)
    if cells > (1 << 62):
        return _py.box_lattice_points(rows, lo, hi, count_only)

    cdef long long *A = <long long *> malloc(m * n * sizeof(long long))
    cdef long long *B = <long long *> malloc(m * sizeof(long long))
    cdef long long *L = <long long *> malloc(n * sizeof(long long))
    cdef long long *H = <long long *> malloc(n * sizeof(long long))
    cdef long long *X = <long long *> malloc(n * sizeof(long long))
    cdef long long s, an, lower, upper, bnd, total = 0
    cdef bint done
    try:
        for i in range(m):
            a0, a = rows[i]
            B[i] = a0
            for j in range(n):
                A[i * n + j] = a[j]
        for j in range(n):
            L[j] = lo[j]
            H[j] = hi[j]
            X[j] = lo[j]
        if last > 0:
            for j in range(last):
                if L[j] > H[j]:
                    return 0
        while True:
            lower = L[last]
            upper = H[last]
            for i in range(m):
                s = B[i]
                for j in range(last):
                    s += A[i * n + j] * X[j]
                an = A[i * n + last]
                if an == 0:
                    if s < 0:
                        upper = lower - 1
                        break
                elif an > 0:
                    bnd = -_floordiv(s, an)
                    if bnd > lower:
                        lower = bnd
                else:
                    bnd = _floordiv(s, -an)
                    if bnd < upper:
                        upper = bnd
                if upper < lower:
                    break
            if upper >= lower:
                total += upper - lower + 1
            # odometer over the first n-1 coordinates
            k = last - 1
            done = True
            while k >= 0:
                if X[k] < H[k]:
                    X[k] += 1
                    done = False
                    break
                X[k] = L[k]
                k -= 1
            if done:
                break
    finally:
        free(A); free(B); free(L); free(H); free(X)
    return total


def ray_crossings(normals, inequalities, weights, w):
    cdef Py_ssize_t n = len(w), c, i, j, k, ng
    cdef long long nw, ni, s, sgn
    cdef bint hit
    # |s| <= 2 * n * maxc^2 * maxw must stay below 2^62
    maxw = max((abs(x) for x in w), default=0)
    maxc = 1
    for nv in normals:
        for x in nv:
            maxc = max(maxc, abs(x))
    for G in inequalities:
        for g in G:
            for x in g:
                maxc = max(maxc, abs(x))
    if 2 * (n + 1) * maxc * maxc * (maxw + 1) > _LIMIT:
        return _py.ray_crossings(normals, inequalities, weights, w)

    cdef long long *wv = <long long *> malloc(n * sizeof(long long))
    cdef long long *nvv = <long long *> malloc(n * sizeof(long long))
    out = [0] * n
    try:
        for j in range(n):
            wv[j] = w[j]
        for c in range(len(normals)):
            nv = normals[c]
            for j in range(n):
                nvv[j] = nv[j]
            nw = 0
            for j in range(n):
                nw += nvv[j] * wv[j]
            if nw == 0:
                return None
            G = inequalities[c]
            ng = len(G)
            for i in range(n):
                ni = nvv[i]
                if ni == 0 or ((nw > 0) == (ni > 0)):
                    continue
                sgn = 1 if ni > 0 else -1
                hit = True
                for k in range(ng):
                    g = G[k]
                    s = 0
                    for j in range(n):
                        s += (<long long> g[j]) * wv[j]
                    s = sgn * (ni * s - nw * (<long long> g[i]))
                    if s < 0:
                        hit = False
                        break
                    if s == 0:
                        return None
                if hit:
                    out[i] += weights[c] * (ni if ni > 0 else -ni)
    finally:
        free(wv)
        free(nvv)
    return out
