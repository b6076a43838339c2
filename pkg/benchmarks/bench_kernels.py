"""Time the geodesic kernels with numba and with the plain-Python fallback.

Each mode runs in its own interpreter because the flag is read at import.

    python3 benchmarks/bench_kernels.py [--length 50] [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from slopegeo import HAVE_NUMBA, geodesics as geo, surfaces
length, repeat = float(sys.argv[1]), int(sys.argv[2])
s = surfaces.gallery()["revolution-sqrt"]
y = geo.initial_velocity(s, 1.2, 0.8)
init = (1.2, 0.0, *y)
res = {"numba": HAVE_NUMBA}
for name, opts in [("rk45_adaptive", geo.IntegratorOptions(tol=1e-10)),
                   ("rk4_fixed", geo.IntegratorOptions(method="rk4_fixed", step=1e-3))]:
    t0 = time.perf_counter()
    geo.integrate_geodesic(s, init, 0.1, opts)  # warm-up / compile
    warm = time.perf_counter() - t0
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        tr = geo.integrate_geodesic(s, init, length, opts)
        best = min(best, time.perf_counter() - t0)
    res[name] = {"first_call_s": warm, "best_s": best, "rows": int(tr.rows.shape[0])}
print(json.dumps(res))
"""


def run(disable, length, repeat):
    env = dict(os.environ)
    env.pop("SLOPEGEO_DISABLE_NUMBA", None)
    if disable:
        env["SLOPEGEO_DISABLE_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", WORKER, str(length), str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--length", type=float, default=50.0, help="geodesic arclength")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    jit = run(False, args.length, args.repeat)
    plain = run(True, args.length, args.repeat)
    if not jit["numba"]:
        print("numba not importable; both runs use the fallback")
    print(f"{'method':<15}{'rows':>9}{'numba [s]':>12}{'fallback [s]':>14}{'speedup':>10}")
    for m in ("rk45_adaptive", "rk4_fixed"):
        a, b = jit[m], plain[m]
        print(f"{m:<15}{a['rows']:>9}{a['best_s']:>12.4f}{b['best_s']:>14.4f}{b['best_s'] / a['best_s']:>10.1f}")


if __name__ == "__main__":
    main()
