"""Command-line front end.

    tropelim trci INPUT               tropical variety (or mixed volume)
    tropelim project FAN MATRIX       push a fan forward, recover the polytope
    tropelim trim INPUT               Newton polytope of an implicit equation

Exit status: 0 on success, 1 for usage or input errors, 2 when the
computation itself fails.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .fan import FanFormatError, WeightedFan, format_fan, read_fan
from .implicit import build_graph_system, divide_polytope, implicitize, is_graph_form
from .poly_io import ParseError, read_linear_map, read_system
from .polytope import Polytope, count_lattice_points
from .pushforward import image_cycle, push_forward
from .reconstruct import Hypersurface, expand_lineality, reconstruct_polytope
from .tropical import tropical_complete_intersection

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2


class UsageError(Exception):
    pass


def format_polytope(P: Polytope, n_points: int | None = None) -> str:
    """Polymake-style text: homogenized VERTICES, FACETS ``a0 a``, lattice point count."""
    out = ["VERTICES"]
    out += ["1 " + " ".join(str(x) for x in v) for v in sorted(P.vertices)]
    out += ["", "FACETS"]
    out += [" ".join(str(x) for x in (a0,) + tuple(a)) for a0, a in sorted(P.facets)]
    if P.equations:
        out += ["", "AFFINE_HULL"]
        out += [" ".join(str(x) for x in (a0,) + tuple(a)) for a0, a in sorted(P.equations)]
    if n_points is not None:
        out += ["", "N_LATTICE_POINTS", str(n_points)]
    return "\n".join(out) + "\n"


def parse_polytope(text: str) -> dict:
    """Read back the blocks written by :func:`format_polytope`."""
    blocks: dict[str, list[tuple[int, ...]]] = {}
    cur = None
    for line in text.splitlines():
        toks = line.split()
        if not toks:
            continue
        if toks[0].isalpha() or "_" in toks[0]:
            cur = toks[0]
            blocks[cur] = []
        elif cur is not None:
            blocks[cur].append(tuple(int(t) for t in toks))
    out = {"vertices": [r[1:] for r in blocks.get("VERTICES", [])],
           "facets": [(r[0], r[1:]) for r in blocks.get("FACETS", [])],
           "equations": [(r[0], r[1:]) for r in blocks.get("AFFINE_HULL", [])]}
    if "N_LATTICE_POINTS" in blocks:
        out["n_lattice_points"] = blocks["N_LATTICE_POINTS"][0][0]
    return out


def _polytope_text(P: Polytope, args) -> str:
    return format_polytope(P, None if args.no_count else count_lattice_points(P))


def _load(loader, path):
    try:
        return loader(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except (ParseError, FanFormatError, ValueError) as e:
        raise UsageError(f"{path}: {e}") from None


def _codim_one_polytope(F: WeightedFan, args) -> str:
    P = reconstruct_polytope(F)
    if args.delta != 1:
        P = divide_polytope(P, args.delta)
    return _polytope_text(P, args)


def cmd_trci(args) -> str:
    system = _load(read_system, args.input)
    if system.n_polynomials > system.n_variables:
        raise UsageError(f"{system.n_polynomials} polynomials in {system.n_variables} "
                         "variables: not a complete intersection")
    F = tropical_complete_intersection(system, threads=args.threads)
    if isinstance(F, int):
        return f"{F}\n"
    if args.format == "polytope":
        if F.codim != 1:
            raise UsageError("--format polytope needs a single polynomial")
        return _codim_one_polytope(F, args)
    return format_fan(F)


def cmd_project(args) -> str:
    F = _load(read_fan, args.fan)
    A = _load(read_linear_map, args.matrix)
    r, p = A.shape
    if p != F.ambient_dim:
        raise UsageError(f"matrix has {p} columns but the fan lives in R^{F.ambient_dim}")
    if F.lineality:
        F = expand_lineality(F)
    fmt = args.format
    if fmt == "auto":
        fmt = "polytope" if F.dim == r - 1 else "fan"
    if fmt == "fan":
        return format_fan(push_forward(F, A, delta=args.delta))
    if F.dim != r - 1:
        raise UsageError(f"the image of a {F.dim}-dimensional fan in R^{r} "
                         "is not a hypersurface; use --format fan")
    P = reconstruct_polytope(Hypersurface.from_image(r, image_cycle(F, A)))
    if args.delta != 1:
        P = divide_polytope(P, args.delta)
    return _polytope_text(P, args)


def cmd_trim(args) -> str:
    g = _load(read_system, args.input)
    if args.format == "fan":
        if is_graph_form(g):
            c, p = g.n_polynomials, g.n_variables
            system = g
            A = tuple(tuple(int(j == c - 1 + i) for j in range(p)) for i in range(c))
        else:
            if g.n_variables != g.n_polynomials - 1:
                raise UsageError(f"{g.n_polynomials} polynomials need "
                                 f"{g.n_polynomials - 1} parameters, got {g.n_variables}")
            system, A = build_graph_system(g)
        F = tropical_complete_intersection(system, threads=args.threads)
        return format_fan(push_forward(F, A, delta=args.delta))
    if not is_graph_form(g) and g.n_variables != g.n_polynomials - 1:
        raise UsageError(f"{g.n_polynomials} polynomials need "
                         f"{g.n_polynomials - 1} parameters, got {g.n_variables}")
    R = implicitize(g, delta=args.delta, threads=args.threads, count_points=False)
    return _polytope_text(R.polytope, args)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(s: str) -> int:
    try:
        k = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {s!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {k}")
    return k


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive, default=1,
                        help="worker processes for cone enumeration (default 1)")
    common.add_argument("--format", choices=("fan", "polytope", "auto"), default="auto",
                        help="output a fan or a polytope; auto picks by dimension")
    common.add_argument("--delta", type=_positive, default=1,
                        help="degree of the map onto its image (default 1)")
    common.add_argument("--no-count", action="store_true",
                        help="skip the lattice point count for polytope output")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    ap = _Parser(prog="tropelim", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("trci", parents=[common],
                       help="tropical variety of a generic complete intersection")
    p.add_argument("input", help="polynomial system file: [vars] [polys]")
    p.set_defaults(run=cmd_trci)
    p = sub.add_parser("project", parents=[common],
                       help="push a weighted fan through a linear map")
    p.add_argument("fan", help="fan file")
    p.add_argument("matrix", help="LINEAR_MAP file")
    p.set_defaults(run=cmd_project)
    p = sub.add_parser("trim", parents=[common],
                       help="Newton polytope of the implicit equation of a parametrization")
    p.add_argument("input", help="n polynomials in n-1 parameters, or a graph-form system")
    p.set_defaults(run=cmd_trim)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # --help, --version and usage errors
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        text = args.run(args)
    except UsageError as e:
        print(f"tropelim {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as e:
        print(f"tropelim {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_COMPUTE
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as e:
            print(f"tropelim: cannot write {args.output}: {e.strerror}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
