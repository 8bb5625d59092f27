import subprocess
import sys

import pytest

from tropelim.cli import format_polytope, main, parse_polytope
from tropelim.fan import check_balancing, parse_fan
from tropelim.polytope import convex_hull

CURVE = "[x,y,z]\n[x*y + z + 1,  x*z + y + 1]\n"
TRIANGLES = "[x,y,z]\n[x*y + z + 1,\n x*z + y + 1,\n y*z + x + 1]\n"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p
    return write


def test_trci_prints_mixed_volume(capsys, files):
    code, out, _ = run(capsys, "trci", files("input", TRIANGLES))
    assert code == 0 and out.strip().splitlines()[-1] == "5"


def test_trci_fan_output(capsys, files):
    code, out, _ = run(capsys, "trci", files("input", CURVE))
    assert code == 0
    F = parse_fan(out)
    assert F.n_rays == 5 and check_balancing(F)


def test_trci_single_polynomial_polytope_format(capsys, files):
    code, out, _ = run(capsys, "trci", files("p", "[x,y]\n[1 + x^2 + y^3]"), "--format", "polytope")
    assert code == 0
    assert sorted(parse_polytope(out)["vertices"]) == [(0, 0), (0, 3), (2, 0)]


def test_trci_then_project(capsys, files):
    inp = files("input", "[x1,x2,x3]\n[x1^3 + x2^3 + x3^3 + 1, x1^(-2)+x2^(-2)+x3^(-2)+1]")
    code, fan, _ = run(capsys, "trci", inp)
    assert code == 0
    A = files("A.matrix", "LINEAR_MAP\n1 1 1\n0 1 2\n")
    code, out, _ = run(capsys, "project", files("fan", fan), A)
    assert code == 0
    got = parse_polytope(out)
    assert sorted(got["vertices"]) == sorted([(36, 0), (0, 36), (30, 12), (18, 12), (6, 24), (18, 24)])
    code, fan_out, _ = run(capsys, "project", files("fan2", fan), A, "--format", "fan")
    assert code == 0 and check_balancing(parse_fan(fan_out))


def test_trim_matches_format(capsys, data_dir):
    code, out, _ = run(capsys, "trim", data_dir / "surface_trinomials.txt")
    assert code == 0
    got = parse_polytope(out)
    assert len(got["vertices"]) == 13 and got["n_lattice_points"] == 383
    assert out.startswith("VERTICES\n1 0 0 0\n")


def test_output_is_deterministic_across_threads(capsys, data_dir):
    a = run(capsys, "trim", data_dir / "rational_curve_graph.txt")[1]
    b = run(capsys, "trim", data_dir / "rational_curve_graph.txt", "--threads", "2")[1]
    assert a == b


def test_trim_fan_format(capsys, data_dir):
    code, out, _ = run(capsys, "trim", data_dir / "rational_curve_graph.txt", "--format", "fan")
    assert code == 0
    F = parse_fan(out)
    assert F.ambient_dim == 2 and F.dim == 1 and check_balancing(F)


def test_output_file(capsys, files, tmp_path):
    target = tmp_path / "out.txt"
    code, out, _ = run(capsys, "trci", files("input", TRIANGLES), "-o", target)
    assert code == 0 and out == "" and target.read_text() == "5\n"


def test_usage_errors(capsys, files):
    assert run(capsys, "trci")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "trci", "/nonexistent/input")[0] == 1
    assert run(capsys, "trci", files("bad", "[x,y]\n[x + q]"))[0] == 1
    assert run(capsys, "trci", files("over", "[x]\n[x + 1, x^2 + 1]"))[0] == 1
    assert run(capsys, "trim", files("i", TRIANGLES), "--delta", "0")[0] == 1
    assert run(capsys, "trim", files("i2", TRIANGLES), "--format", "cube")[0] == 1
    code, _, err = run(capsys, "project", files("f", "DIM\n1\nRAYS\n1 0\n"), files("A", "LINEAR_MAP\n1 0\n"))
    assert code == 1 and "MAXIMAL_CONES" in err


def test_computation_errors(capsys, files):
    # every ray collapses: the fiber is not finite
    fan = files("fan", "DIM\n1\nRAYS\n1 0\n-1 0\nMAXIMAL_CONES\n0\n1\n")
    A = files("A", "LINEAR_MAP\n0 1\n")
    code, _, err = run(capsys, "project", fan, A, "--format", "fan")
    assert code == 2 and "degenerate fiber" in err
    code, _, err = run(capsys, "trim", files("g", "[t]\n[t, t^3 + 1]"), "--delta", "2")
    assert code == 2 and "delta" in err


def test_polytope_text_round_trip():
    P = convex_hull([(0, 0, 0), (2, 0, 0), (0, 3, 0), (0, 0, 1)])
    got = parse_polytope(format_polytope(P, 7))
    assert sorted(got["vertices"]) == sorted(P.vertices)
    assert sorted(got["facets"]) == sorted(P.facets)
    assert got["n_lattice_points"] == 7


def test_module_entry_point(data_dir):
    res = subprocess.run([sys.executable, "-m", "tropelim", "trim", str(data_dir / "rational_curve_graph.txt"),
                          "--no-count"], capture_output=True, text=True)
    assert res.returncode == 0 and "N_LATTICE_POINTS" not in res.stdout
    assert res.stdout.count("\n1 ") == 5
