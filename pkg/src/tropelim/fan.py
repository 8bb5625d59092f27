"""Pure-dimensional polyhedral fans with integer multiplicities.

File format (blank lines between blocks are optional)::

    AMBIENT_DIM
    3
    DIM
    1
    RAYS
     0 -1 -1
     ...
    MAXIMAL_CONES
    0
    ...
    MULTIPLICITIES
    2
    ...

``AMBIENT_DIM`` may be omitted when rays are present.  An optional
``LINEALITY_SPACE`` block lists generators of a lineality space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .lattice import (LatticeBasis, dot, integer_kernel, primitive, rank,
                      saturated_span_lattice)
from .polytope import Cone, cone_hrep

Ray = tuple[int, ...]


class FanError(ValueError):
    pass


class FanFormatError(FanError):
    pass


@dataclass(frozen=True)
class WeightedFan:
    ambient_dim: int
    dim: int
    rays: tuple[Ray, ...]
    cones: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...]
    lineality: tuple[Ray, ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if len(self.cones) != len(self.multiplicities):
            raise FanError("number of cones and multiplicities differ")
        for r in self.rays:
            if len(r) != self.ambient_dim:
                raise FanError(f"ray {r} does not live in R^{self.ambient_dim}")
        for c in self.cones:
            for i in c:
                if not 0 <= i < len(self.rays):
                    raise FanError(f"ray index {i} out of range")
        if any(m < 1 for m in self.multiplicities):
            raise FanError("multiplicities must be positive")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_cones(cls, ambient_dim: int, cones: Iterable[tuple[Iterable[Sequence[int]], int]],
                   dim: int | None = None, lineality: Sequence[Sequence[int]] = ()):
        """Build a canonically ordered fan from ``(ray generators, multiplicity)`` pairs."""
        ray_index: dict[Ray, int] = {}
        raw = []
        for gens, m in cones:
            rs = sorted({primitive(g) for g in gens})
            raw.append((rs, m))
            for r in rs:
                ray_index.setdefault(r, 0)
        rays = sorted(ray_index)
        ray_index = {r: i for i, r in enumerate(rays)}
        pairs = sorted((tuple(sorted(ray_index[r] for r in rs)), m) for rs, m in raw)
        lin = tuple(tuple(v) for v in lineality)
        if dim is None:
            dim = (len(pairs[0][0]) if pairs else 0) and rank([rays[i] for i in pairs[0][0]]
                                                             + list(lin))
        fan = cls(ambient_dim, dim, tuple(rays), tuple(c for c, _ in pairs),
                  tuple(m for _, m in pairs), lin)
        fan.check_pure()
        return fan

    def canonical(self) -> "WeightedFan":
        return WeightedFan.from_cones(
            self.ambient_dim,
            [([self.rays[i] for i in c], m) for c, m in zip(self.cones, self.multiplicities)],
            self.dim, self.lineality)

    # -- queries ----------------------------------------------------------

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @property
    def n_cones(self) -> int:
        return len(self.cones)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def cone(self, i: int) -> Cone:
        key = ("cone", i)
        if key not in self._cache:
            self._cache[key] = Cone(self.ambient_dim, tuple(self.rays[j] for j in self.cones[i]))
        return self._cache[key]

    def cone_rays(self, i: int) -> list[Ray]:
        return [self.rays[j] for j in self.cones[i]]

    def check_pure(self):
        for i, c in enumerate(self.cones):
            k = rank([self.rays[j] for j in c] + list(self.lineality)) if (c or self.lineality) else 0
            if k != self.dim:
                raise FanError(f"cone {i} has dimension {k}, expected {self.dim}")

    def multiplicity_at(self, w: Sequence) -> int:
        """Sum of multiplicities of the cones whose relative interior holds ``w``.

        Meaningful for ``w`` generic in the support.  Lineality is not
        supported here.
        """
        total = 0
        for i, m in enumerate(self.multiplicities):
            if self.cone(i).contains_relint(w):
                total += m
        return total

    def scaled(self, k: int) -> "WeightedFan":
        return WeightedFan(self.ambient_dim, self.dim, self.rays, self.cones,
                           tuple(k * m for m in self.multiplicities), self.lineality)

    def quotient_by_lineality(self) -> "WeightedFan":
        """Image in Z^p / (lineality ∩ Z^p), which is a pointed fan."""
        if not self.lineality:
            return self
        proj = integer_kernel([list(v) for v in self.lineality], self.ambient_dim)
        k = len(self.lineality)
        cones = []
        for c, m in zip(self.cones, self.multiplicities):
            gens = [tuple(dot(row, r) for row in proj) for r in (self.rays[j] for j in c)]
            cones.append(([g for g in gens if any(g)], m))
        return WeightedFan.from_cones(len(proj), cones, self.dim - k)


# ---------------------------------------------------------------------------
# balancing


@dataclass
class BalancingReport:
    balanced: bool
    ridge: tuple | None = None      # a point in the offending ridge
    residual: tuple | None = None   # the weighted sum that failed

    def __bool__(self):
        return self.balanced

    def __str__(self):
        if self.balanced:
            return "balanced"
        return f"not balanced at ridge through {self.ridge}: weighted sum {self.residual}"


def _lattice_normal(L: LatticeBasis, g: Sequence[int]) -> tuple[int, ...]:
    """A vector u of L with g.u equal to the positive generator of g(L)."""
    vals = [dot(g, b) for b in L.vectors]
    # extended gcd over the list
    coeffs = [0] * len(vals)
    cur, cur_coeffs = 0, coeffs[:]
    for i, v in enumerate(vals):
        if v == 0:
            continue
        if cur == 0:
            cur = v
            cur_coeffs = [0] * len(vals)
            cur_coeffs[i] = 1
            continue
        a, b = cur, v
        x0, x1, y0, y1 = 1, 0, 0, 1
        while b:
            q = a // b
            a, b = b, a - q * b
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        cur = a
        cur_coeffs = [x0 * c for c in cur_coeffs]
        cur_coeffs[i] += y0
    if cur < 0:
        cur_coeffs = [-c for c in cur_coeffs]
    u = [0] * L.ambient_dim
    for c, b in zip(cur_coeffs, L.vectors):
        if c:
            u = [x + c * y for x, y in zip(u, b)]
    return tuple(u)


def check_balancing(F: WeightedFan) -> BalancingReport:
    """Check the balancing condition at every ridge of ``F``.

    Works for fans whose cones meet in whole faces and also for fans where
    a facet of one cone is subdivided among several neighbours: ridges are
    probed at a random interior point, so only generic incidences count.
    """
    F.check_pure()
    if F.lineality:
        F = F.quotient_by_lineality()
    if F.dim == 0:
        return BalancingReport(True)
    if F.dim == 1:
        s = [0] * F.ambient_dim
        for c, m in zip(F.cones, F.multiplicities):
            s = [x + m * y for x, y in zip(s, F.rays[c[0]])]
        if any(s):
            return BalancingReport(False, (0,) * F.ambient_dim, tuple(s))
        return BalancingReport(True)

    rng = random.Random(0xBA1)
    hreps = [cone_hrep(F.cone_rays(i)) for i in range(F.n_cones)]
    lattices = [saturated_span_lattice(F.cone_rays(i), F.ambient_dim) for i in range(F.n_cones)]
    done: set[frozenset] = set()
    for i in range(F.n_cones):
        h = hreps[i]
        for j in range(len(h.inequalities)):
            on = [r for r, inc in zip(h.rays, h.ray_facets) if inc >> j & 1]
            key = frozenset(on)
            if key in done:
                continue
            done.add(key)
            # random positive combination: generic inside this ridge
            q = [0] * F.ambient_dim
            for r in on:
                k = rng.randint(1, 1 << 20)
                q = [x + k * y for x, y in zip(q, r)]
            total = [0] * F.ambient_dim
            for k2, hk in enumerate(hreps):
                if any(dot(e, q) for e in hk.equations):
                    continue
                vals = [dot(g, q) for g in hk.inequalities]
                if min(vals) < 0 or vals.count(0) != 1:
                    continue
                u = _lattice_normal(lattices[k2], hk.inequalities[vals.index(0)])
                m = F.multiplicities[k2]
                total = [x + m * y for x, y in zip(total, u)]
            if any(total) and rank(on + [tuple(total)]) > rank(on):
                return BalancingReport(False, tuple(q), tuple(total))
    return BalancingReport(True)


# ---------------------------------------------------------------------------
# I/O

_BLOCKS = ("AMBIENT_DIM", "DIM", "RAYS", "MAXIMAL_CONES", "MULTIPLICITIES", "LINEALITY_SPACE")


def parse_fan(text: str) -> WeightedFan:
    blocks: dict[str, list[tuple[int, list[str]]]] = {}
    current = None
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks or toks[0].startswith("#"):
            continue
        if toks[0] in _BLOCKS and len(toks) == 1:
            current = toks[0]
            if current in blocks:
                raise FanFormatError(f"duplicate block {current} on line {lineno}")
            blocks[current] = []
            continue
        if current is None:
            raise FanFormatError(f"data before any block header on line {lineno}")
        blocks[current].append((lineno, toks))

    def ints(lineno, toks):
        try:
            return tuple(int(t) for t in toks)
        except ValueError:
            raise FanFormatError(f"non-integer entry on line {lineno}") from None

    def scalar(name):
        rows = blocks.get(name)
        if not rows or len(rows) != 1 or len(rows[0][1]) != 1:
            raise FanFormatError(f"block {name} must hold a single integer")
        return ints(*rows[0])[0]

    for name in ("DIM", "RAYS", "MAXIMAL_CONES"):
        if name not in blocks:
            raise FanFormatError(f"missing block {name}")
    dim = scalar("DIM")
    rays = [ints(*r) for r in blocks["RAYS"]]
    if "AMBIENT_DIM" in blocks:
        amb = scalar("AMBIENT_DIM")
    elif rays:
        amb = len(rays[0])
    else:
        raise FanFormatError("AMBIENT_DIM is required when there are no rays")
    for (ln, _), r in zip(blocks["RAYS"], rays):
        if len(r) != amb:
            raise FanFormatError(f"ray on line {ln} has length {len(r)}, expected {amb}")
    cones = [ints(*r) for r in blocks["MAXIMAL_CONES"]]
    for (ln, _), c in zip(blocks["MAXIMAL_CONES"], cones):
        for i in c:
            if not 0 <= i < len(rays):
                raise FanFormatError(f"ray index {i} out of range on line {ln}")
    if "MULTIPLICITIES" in blocks:
        mults = [ints(*r) for r in blocks["MULTIPLICITIES"]]
        if any(len(m) != 1 for m in mults):
            raise FanFormatError("one multiplicity per line expected")
        mults = [m[0] for m in mults]
    else:
        mults = [1] * len(cones)
    if len(mults) != len(cones):
        raise FanFormatError(f"{len(cones)} cones but {len(mults)} multiplicities")
    lin = tuple(ints(*r) for r in blocks.get("LINEALITY_SPACE", []))
    try:
        fan = WeightedFan(amb, dim, tuple(rays), tuple(tuple(c) for c in cones),
                          tuple(mults), lin)
        fan.check_pure()
    except FanError as e:
        raise FanFormatError(str(e)) from None
    return fan


def format_fan(F: WeightedFan) -> str:
    width = max((len(str(x)) for r in F.rays for x in r), default=1)
    out = ["AMBIENT_DIM", str(F.ambient_dim), "", "DIM", str(F.dim), ""]
    if F.lineality:
        out.append("LINEALITY_SPACE")
        out += [" ".join(str(x).rjust(width) for x in r) for r in F.lineality]
        out.append("")
    out.append("RAYS")
    out += [" ".join(str(x).rjust(width) for x in r) for r in F.rays]
    out += ["", "MAXIMAL_CONES"]
    out += [" ".join(map(str, c)) for c in F.cones]
    out += ["", "MULTIPLICITIES"]
    out += [str(m) for m in F.multiplicities]
    return "\n".join(out) + "\n"


def read_fan(path) -> WeightedFan:
    with open(path) as fh:
        return parse_fan(fh.read())


def write_fan(F: WeightedFan, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_fan(F))
