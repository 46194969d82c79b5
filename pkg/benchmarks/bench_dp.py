"""Time the fused size DP with the numba kernel and the numpy fallback.

    python benchmarks/bench_dp.py [--pairs 13,17 19,25 24,25] [--repeat 3]

Both backends must produce identical counts; the script exits nonzero otherwise.
"""

import argparse
import sys
import time

import numpy as np

from simcore import _accel
from simcore.pathdp import _run_dense, calibrated_config


def run(pair, backend):
    final, _ = _run_dense(calibrated_config(pair), fused=True, backend=backend)
    return final.sum(axis=0)


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", nargs="+", default=["7,11", "13,17", "19,25", "24,25"])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["numpy"]
    if _accel.HAVE_NUMBA:
        backends.insert(0, "numba")
        run((2, 3), "numba")  # compile outside the timings
    else:
        print("numba unavailable (or SIMCORE_DISABLE_NUMBA set): numpy only")

    print(f"{'pair':>8} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    status = 0
    for text in args.pairs:
        pair = tuple(int(x) for x in text.split(","))
        results = {b: best_of(lambda b=b: run(pair, b), args.repeat) for b in backends}
        outs = [r[1] for r in results.values()]
        if any(not np.array_equal(outs[0], o) for o in outs[1:]):
            print(f"{text}: backends disagree", file=sys.stderr)
            status = 1
        times = [results[b][0] for b in backends]
        speed = f"{times[-1] / times[0]:8.2f}x" if len(times) > 1 else ""
        print(f"{text:>8} " + " ".join(f"{t:9.3f}s" for t in times) + f"  {speed}")
    return status


if __name__ == "__main__":
    sys.exit(main())
