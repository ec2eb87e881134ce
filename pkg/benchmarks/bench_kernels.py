"""Time the numba kernels against the interpreted fallback.

Each path runs in its own interpreter (the flag is read at import time), so
the comparison covers whole call trees, not only the outermost kernel:

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys
import time

CHILD = "_DUALFRAMES_BENCH_CHILD"


def workloads():
    import numpy as np

    from dualframes import _kernels
    from dualframes.linalg import SYM_TOL

    rng = np.random.default_rng(0)
    sym = rng.standard_normal((10, 10))
    sym = sym + sym.T
    gen = rng.standard_normal((12, 12))
    cross = rng.standard_normal((12, 12))
    return {
        "jacobi 10x10 x50": lambda: [_kernels.jacobi_eigh(sym, SYM_TOL, 100) for _ in range(50)],
        "francis QR 12x12 x50": lambda: [_kernels.real_eigvals(gen, 30) for _ in range(50)],
        "radii N=12 k=2": lambda: _kernels.subset_spectral_radii(cross, 2, 66, 30),
        "radii N=12 k=4": lambda: _kernels.subset_spectral_radii(cross, 4, 495, 30),
    }


def child(repeat):
    from dualframes._jit import USE_NUMBA

    out = {"jit": USE_NUMBA, "times": {}}
    for name, fn in workloads().items():
        fn()  # warm-up, also triggers compilation or cache load
        best = min(_timed(fn) for _ in range(repeat))
        out["times"][name] = best
    print(json.dumps(out))


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def run_path(no_jit, repeat):
    env = dict(os.environ, **{CHILD: "1"})
    env.pop("DUALFRAMES_NO_JIT", None)
    if no_jit:
        env["DUALFRAMES_NO_JIT"] = "1"
    out = subprocess.run([sys.executable, __file__, "--repeat", str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if os.environ.get(CHILD):
        child(args.repeat)
        return
    fast = run_path(False, args.repeat)
    slow = run_path(True, args.repeat)
    if not fast["jit"]:
        print("numba not available; both runs use the interpreted path")
    print(f"{'workload':24s} {'numba s':>10s} {'python s':>10s} {'speedup':>8s}")
    for name, t_fast in fast["times"].items():
        t_slow = slow["times"][name]
        print(f"{name:24s} {t_fast:10.5f} {t_slow:10.5f} {t_slow / t_fast:8.1f}")


if __name__ == "__main__":
    main()
