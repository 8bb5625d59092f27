"""Time the compiled and pure-Python kernel backends on the same workloads.

Each backend runs in its own subprocess (the choice is made at import), and
the outputs are compared so the speedup is only reported for equal answers.

    python benchmarks/bench_kernels.py [--repeat N] [--only NAME ...]
"""

import argparse
import json
import os
import subprocess
import sys
import time
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"

WORKLOADS = {
    "hull_7d_minkowski": """
from tropelim.poly_io import read_system
from tropelim.implicit import build_graph_system
from tropelim.tropical import newton_polytopes
from tropelim.polytope import minkowski_sum_all
s, _ = build_graph_system(read_system(DATA / "threefold_four_polys.txt"))
polys = newton_polytopes(s)
def run():
    S = minkowski_sum_all(polys)
    return [len(S.vertices), len(S.facets)]
""",
    "trci_6var": """
from tropelim.poly_io import parse_system
from tropelim.tropical import tropical_complete_intersection
g = parse_system('''[a,b,c,d,e,f]
[a*b*c*d*e*f + a + b + c + d + e + f + 1,
 a*b + b*c + c*d + d*e + e*f + f*a,
 a + b + c + d + e + f + 1]''')
def run():
    F = tropical_complete_intersection(g)
    return [F.n_rays, F.n_cones, sum(F.multiplicities)]
""",
    "trim_4d": """
from tropelim.poly_io import read_system
from tropelim.implicit import implicitize
g = read_system(DATA / "threefold_tetrahedra.txt")
def run():
    P = implicitize(g, count_points=False).polytope
    return sorted(P.vertices)
""",
    "lattice_count": """
from tropelim.polytope import convex_hull, count_lattice_points
P = convex_hull([(0, 0, 0), (30, 0, 0), (0, 30, 0), (0, 0, 30), (12, 7, 5)])
Q = convex_hull([(0, 0, 0), (400, 0, 0), (0, 400, 0), (0, 0, 400)])
def run():
    return [count_lattice_points(P), count_lattice_points(Q)]
""",
}

RUNNER = """
import json, sys, time
from pathlib import Path
DATA = Path({data!r})
{setup}
from tropelim import kernels
best = None
for _ in range({repeat}):
    t = time.perf_counter()
    out = run()
    dt = time.perf_counter() - t
    best = dt if best is None else min(best, dt)
print(json.dumps({{"backend": kernels.BACKEND, "seconds": best, "result": out}}))
"""


def run_backend(name, pure, repeat):
    env = dict(os.environ)
    env.pop("TROPELIM_PURE_PYTHON", None)
    if pure:
        env["TROPELIM_PURE_PYTHON"] = "1"
    code = RUNNER.format(data=str(DATA), setup=WORKLOADS[name], repeat=repeat)
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    if res.returncode:
        raise SystemExit(f"{name} failed:\n{res.stderr}")
    return json.loads(res.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--only", nargs="*", choices=sorted(WORKLOADS))
    args = ap.parse_args(argv)
    names = args.only or list(WORKLOADS)
    print(f"{'workload':<22}{'python s':>10}{'compiled s':>12}{'speedup':>9}  same")
    for name in names:
        py = run_backend(name, True, args.repeat)
        cy = run_backend(name, False, args.repeat)
        if cy["backend"] != "cython":
            print(f"{name:<22}{py['seconds']:>10.3f}{'n/a':>12}{'':>9}  (extension not built)")
            continue
        same = py["result"] == cy["result"]
        print(f"{name:<22}{py['seconds']:>10.3f}{cy['seconds']:>12.3f}"
              f"{py['seconds'] / cy['seconds']:>8.2f}x  {'yes' if same else 'NO'}")


if __name__ == "__main__":
    t0 = time.time()
    main()
    print(f"total {time.time() - t0:.1f}s")
