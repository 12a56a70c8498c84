#!/usr/bin/env python3
"""Benchmark the compiled core against the pure-Python fallback.

Times the hot kernels on representative workloads (scan rows, spectral
bands, sieve construction, pointwise special functions) and prints a table
with the speedup.  Usage: python benchmarks/bench_backends.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from zetaconv import _purepy

try:
    from zetaconv import _core
except ImportError:
    _core = None


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    ts_scan = np.arange(0.0, 30.0, 0.01)          # stripscan row
    ts_band = np.linspace(-268.0, 268.0, 4096)    # solver symbol band
    u_grid = np.linspace(-50.0, 8.0, 200_000)     # kernel tabulation
    xs_ei = -np.logspace(-3, 2.0, 100_000)
    scalar_s = [complex(0.6, t) for t in np.linspace(0.0, 900.0, 400)]

    def scalars(mod):
        def run():
            for s in scalar_s:
                mod.zeta(s)
                mod.log_gamma(s)
        return run

    return [
        ("zeta_band: scan row (3001 pts, t<=30)", lambda m: lambda: m.zeta_band(0.6, ts_scan)),
        ("zeta_band: solver band (4096 pts, t<=268)", lambda m: lambda: m.zeta_band(0.75, ts_band)),
        ("log_gamma_band (4096 pts)", lambda m: lambda: m.log_gamma_band(0.75, ts_band)),
        ("zeta+log_gamma scalar x400 (t<=900)", scalars),
        ("kernel_arr salem (200k)", lambda m: lambda: m.kernel_arr(0, 0.75, u_grid)),
        ("kernel_arr fracpart (200k)", lambda m: lambda: m.kernel_arr(1, 0.75, u_grid)),
        ("kernel_arr digamma (200k)", lambda m: lambda: m.kernel_arr(2, 0.75, u_grid)),
        ("ei_arr (100k)", lambda m: lambda: m.ei_arr(xs_ei)),
        ("moebius sieve 1e6", lambda m: lambda: m.moebius(10 ** 6)),
        ("moebius sieve 1e7", lambda m: lambda: m.moebius(10 ** 7)),
    ]


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _core is None:
        print("compiled core not available; showing pure-Python timings only")
    header = f"{'workload':45s} {'python':>10s} {'c':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for label, make in workloads():
        t_py = timeit(make(_purepy), args.repeat)
        if _core is not None:
            t_c = timeit(make(_core), args.repeat)
            print(f"{label:45s} {t_py * 1e3:9.2f}ms {t_c * 1e3:9.2f}ms {t_py / t_c:7.1f}x")
        else:
            print(f"{label:45s} {t_py * 1e3:9.2f}ms {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
