"""Reading and writing polynomial systems and linear maps.

A system file looks like::

    [x,y]
    [x^(-2)*y^(-2) + x + x*y,
     x^2 + y + x^(-1)]

Only supports matter: numeric coefficients are parsed and thrown away,
so ``2*x`` and ``x`` give the same support, and ``-`` between terms is
treated exactly like ``+``.  Coefficients are assumed generic.

A linear map file is the header ``LINEAR_MAP`` followed by integer rows.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .lattice import integer_kernel, rank

Exponent = tuple[int, ...]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


@dataclass(frozen=True)
class PolynomialSystem:
    """Variable names plus one exponent-vector set per polynomial."""

    variables: tuple[str, ...]
    supports: tuple[frozenset[Exponent], ...]

    def __post_init__(self):
        p = len(self.variables)
        if len(set(self.variables)) != p:
            raise ValueError("duplicate variable names")
        for S in self.supports:
            if not S:
                raise ValueError("empty support")
            for a in S:
                if len(a) != p:
                    raise ValueError(f"exponent {a} does not match {p} variables")

    @classmethod
    def from_supports(cls, variables: Sequence[str], supports: Iterable[Iterable[Sequence[int]]]):
        return cls(tuple(variables),
                   tuple(frozenset(tuple(int(x) for x in a) for a in S) for S in supports))

    @property
    def n_variables(self) -> int:
        return len(self.variables)

    @property
    def n_polynomials(self) -> int:
        return len(self.supports)


@dataclass(frozen=True)
class MonomialMap:
    """Integer r x p matrix with linearly independent rows."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.matrix:
            raise ValueError("empty matrix")
        p = len(self.matrix[0])
        if any(len(r) != p for r in self.matrix):
            raise ValueError("ragged matrix rows")
        if rank(self.matrix) != len(self.matrix):
            raise ValueError(_dependency_message(self.matrix))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.matrix), len(self.matrix[0])

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.matrix)

    @classmethod
    def identity(cls, n: int) -> "MonomialMap":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def _dependency_message(rows) -> str:
    cols = [list(c) for c in zip(*rows)]
    ker = integer_kernel(cols, len(rows))
    rel = ker[0]
    terms = []
    for i, c in enumerate(rel):
        if c:
            terms.append(f"{c}*row{i + 1}")
    return "rows are linearly dependent: " + " + ".join(terms).replace("+ -", "- ") + " = 0"


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d*)?|\.\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<pow>\*\*|\^)
  | (?P<op>[\[\],+\-*()/])
""", re.VERBOSE)


def _tokenize(text: str):
    pos = 0
    line, col = 1, 1
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind != "ws":
            out.append((kind if kind != "op" else s, s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        pos = m.end()
    out.append(("eof", "", line, col))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2], tok[3])
        self.i += 1
        return tok

    def variables(self) -> list[str]:
        self.take("[")
        names = [self.take("ident")[1]]
        while self.peek()[0] == ",":
            self.take(",")
            names.append(self.take("ident")[1])
        self.take("]")
        return names

    def polynomials(self, index: dict[str, int]) -> list[frozenset]:
        self.take("[")
        if self.peek()[0] == "]":
            tok = self.peek()
            raise ParseError("empty polynomial list", tok[2], tok[3])
        polys = [self.polynomial(index)]
        while self.peek()[0] == ",":
            self.take(",")
            polys.append(self.polynomial(index))
        self.take("]")
        return polys

    def polynomial(self, index) -> frozenset:
        terms = set()
        if self.peek()[0] in "+-":
            self.take()
        terms.add(self.term(index))
        while self.peek()[0] in ("+", "-"):
            self.take()
            terms.add(self.term(index))
        return frozenset(terms)

    def term(self, index) -> Exponent:
        exp = [0] * len(index)
        self.factor(index, exp)
        while self.peek()[0] == "*":
            self.take("*")
            self.factor(index, exp)
        return tuple(exp)

    def factor(self, index, exp):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            if self.peek()[0] == "/":
                self.take("/")
                self.take("num")
            return
        if tok[0] == "ident":
            self.take()
            if tok[1] not in index:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2], tok[3])
            e = 1
            if self.peek()[0] == "pow":
                self.take()
                e = self.exponent()
            exp[index[tok[1]]] += e
            return
        what = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise ParseError(f"expected a monomial factor, found {what}", tok[2], tok[3])

    def exponent(self) -> int:
        paren = self.peek()[0] == "("
        if paren:
            self.take("(")
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        tok = self.take("num")
        if not tok[1].isdigit():
            raise ParseError(f"exponent must be an integer, got {tok[1]!r}", tok[2], tok[3])
        if paren:
            self.take(")")
        return sign * int(tok[1])


def parse_system(text: str) -> PolynomialSystem:
    """Parse ``[vars] [poly, ...]`` into supports."""
    ps = _Parser(text)
    names = ps.variables()
    if len(set(names)) != len(names):
        tok = ps.toks[0]
        raise ParseError("duplicate variable name", tok[2], tok[3])
    index = {v: i for i, v in enumerate(names)}
    polys = ps.polynomials(index)
    ps.take("eof")
    return PolynomialSystem(tuple(names), tuple(polys))


def _monomial(exp: Exponent, names: Sequence[str]) -> str:
    parts = []
    for e, v in zip(exp, names):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
        elif e < 0:
            parts.append(f"{v}^({e})")
    return "*".join(parts) if parts else "1"


def format_system(system: PolynomialSystem) -> str:
    polys = []
    for S in system.supports:
        terms = sorted(S, key=lambda a: (-sum(a), tuple(-x for x in a)))
        polys.append(" + ".join(_monomial(a, system.variables) for a in terms))
    return "[" + ",".join(system.variables) + "]\n[" + ",\n ".join(polys) + "]\n"


def parse_linear_map(text: str) -> MonomialMap:
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(n, toks) for n, toks in lines if toks]
    if not lines or lines[0][1][0] != "LINEAR_MAP":
        ln = lines[0][0] if lines else 1
        raise ParseError("missing LINEAR_MAP header", ln, 1)
    n0, first = lines[0]
    rows_tokens = ([(n0, first[1:])] if len(first) > 1 else []) + lines[1:]
    rows = []
    for ln, toks in rows_tokens:
        try:
            rows.append(tuple(int(t) for t in toks))
        except ValueError:
            raise ParseError(f"non-integer entry in matrix row {' '.join(toks)!r}", ln, 1) from None
    if not rows:
        raise ParseError("LINEAR_MAP has no rows", n0, 1)
    if len({len(r) for r in rows}) != 1:
        raise ParseError("matrix rows have different lengths", rows_tokens[0][0], 1)
    return MonomialMap(tuple(rows))


def format_linear_map(A: MonomialMap) -> str:
    return "LINEAR_MAP\n" + "\n".join(" ".join(str(x) for x in r) for r in A.matrix) + "\n"


def read_system(path) -> PolynomialSystem:
    with open(path) as fh:
        return parse_system(fh.read())


def read_linear_map(path) -> MonomialMap:
    with open(path) as fh:
        return parse_linear_map(fh.read())
