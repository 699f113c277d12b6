"""Benchmark the bit-packed GF(2) kernels: numba JIT vs pure-numpy fallback.

Times zsep.gf2.rref and left_kernel_combos on random dense matrices with
both backends selected per call, then (optionally) the full Boolean S-box
check in subprocesses with ZSEP_BACKEND set, where the import-time backend
choice applies.

Run:  python3 benchmarks/bench_gf2.py [--sizes 256x512,1024x2048] [--repeat 5]
"""

import argparse
import os
import random
import statistics
import subprocess
import sys
import time

from zsep import gf2


def rand_supports(rng, nrows, ncols, density=0.3):
    return [
        [c for c in range(ncols) if rng.random() < density]
        for _ in range(nrows)
    ]


def time_call(fn, repeat):
    best = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best.append(time.perf_counter() - t0)
    return min(best), statistics.median(best)


def bench_size(nrows, ncols, repeat, backends):
    rng = random.Random(12345)
    supports = rand_supports(rng, nrows, ncols)
    packed = gf2.pack_support(supports, ncols, aug_identity=True)
    results = {}
    for be in backends:
        # rref mutates in place: hand each run a fresh copy
        def run_rref():
            gf2.rref(packed.copy(), ncols, backend=be)

        def run_kernel():
            gf2.left_kernel_combos(supports, ncols, backend=be)

        run_rref()  # warm-up (JIT compile on first numba call)
        results[be] = (time_call(run_rref, repeat), time_call(run_kernel, repeat))
    return results


def bench_sbox_check(backends):
    """End-to-end: optimized-with-field-ideal check on the 39 S-box quadrics."""
    code = (
        "import time; "
        "from zsep.boolring import sbox_system, bool_check_separating, "
        "BOOL_OPTIMIZED_FIELD; "
        "s = sbox_system(dmax=2); "
        "t0 = time.perf_counter(); "
        "out = bool_check_separating(s, tuple(range(6)), mode=BOOL_OPTIMIZED_FIELD); "
        "print(f'{out.ok} {time.perf_counter() - t0:.3f}')"
    )
    rows = []
    for be in backends:
        env = dict(os.environ, ZSEP_BACKEND=be)
        r = subprocess.run([sys.executable, "-c", code], env=env,
                           capture_output=True, text=True, check=True)
        ok, secs = r.stdout.split()
        rows.append((be, ok, float(secs)))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="128x256,512x1024,1024x2048",
                    help="comma-separated ROWSxCOLS matrix sizes")
    ap.add_argument("--repeat", type=int, default=5, help="timed runs per case")
    ap.add_argument("--skip-sbox", action="store_true",
                    help="skip the end-to-end S-box comparison")
    args = ap.parse_args()

    backends = ["numpy"]
    if gf2.BACKEND == "numba":
        backends.append("numba")
    else:
        print("note: numba backend unavailable in this process; "
              "timing numpy only", file=sys.stderr)

    print(f"{'size':>12}  {'op':<8}" +
          "".join(f"  {be + ' best':>12}  {be + ' median':>12}" for be in backends))
    for spec in args.sizes.split(","):
        nrows, ncols = (int(v) for v in spec.lower().split("x"))
        results = bench_size(nrows, ncols, args.repeat, backends)
        for opi, op in enumerate(("rref", "kernel")):
            cells = ""
            for be in backends:
                best, med = results[be][opi]
                cells += f"  {best * 1e3:>10.2f}ms  {med * 1e3:>10.2f}ms"
            print(f"{spec:>12}  {op:<8}" + cells)

    if not args.skip_sbox:
        print()
        print("S-box 6-variable optimized check (fresh process per backend):")
        for be, ok, secs in bench_sbox_check(backends):
            print(f"  ZSEP_BACKEND={be:<6}  ok={ok}  {secs:.3f}s")


if __name__ == "__main__":
    main()
