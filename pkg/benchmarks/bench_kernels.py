"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each kernel is run once to trigger compilation, then timed ``--repeat``
times per backend; the best time is reported with the result so the two
paths can be checked for agreement as well as speed.
"""

import argparse
import time

import numpy as np

from mdzeta.cone import Cone
from mdzeta.membrane import f0_kernel
from mdzeta.quadfield import make_field
from mdzeta.quadrature import _x_chains, pair_sum
from mdzeta.series import lattice_power_sum


def best_of(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller problem sizes")
    ap.add_argument("--d", type=int, default=5)
    args = ap.parse_args()

    cone = Cone.from_field(make_field(args.d))
    T = cone.trace
    b1, b2 = cone.beta_floats()
    X = 10**6 if args.quick else 10**7
    n = 16 if args.quick else 24
    odd, even = _x_chains(cone, n, 2, 3)
    t = np.random.default_rng(0).uniform(0.1, 5.0, (2, 2_000_000))

    cases = {
        f"lattice sum Q^-2, X={X:.0e}": {
            "numba": lambda: lattice_power_sum(T, 2.0, X, backend="numba")[0],
            "numpy": lambda: lattice_power_sum(T, 2.0, X, backend="numpy")[0],
        },
        f"corollary pair kernel, n={n}": {
            "numba": lambda: pair_sum(odd, even, True, backend="numba"),
            "numpy": lambda: pair_sum(odd, even, True, backend="numpy"),
        },
        "f0 closed form, 2e6 points": {
            "numba": lambda: float(np.sum(f0_kernel(t[0], t[1], b1, b2))),
            "numpy": lambda: float(np.sum(f0_kernel.py_func(t[0], t[1], b1, b2))),
        },
    }
    print(f"{'kernel':34s} {'numba [s]':>10s} {'numpy [s]':>10s} {'speedup':>8s} {'rel. diff':>10s}")
    for name, fns in cases.items():
        fns["numba"]()  # compile
        tn, vn = best_of(fns["numba"], args.repeat)
        tp, vp = best_of(fns["numpy"], args.repeat)
        print(f"{name:34s} {tn:10.3f} {tp:10.3f} {tp / tn:8.1f} {abs(vn / vp - 1):10.1e}")


if __name__ == "__main__":
    main()
