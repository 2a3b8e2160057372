#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the two hot paths on realistic workloads:

* the Fourier sum behind a Baker-Akhiezer zero scan (one sum per z over a
  fixed quadrature node set), and
* the master-field residual + cost evaluation inside the optimizer loop.

Run twice to compare backends:

    python bench/benchmark_kernels.py
    XI_LAB_NO_NUMBA=1 python bench/benchmark_kernels.py
"""

import time

import numpy as np

from xilab.baker_akhiezer import BAFunction
from xilab.kernels import (BACKEND, fourier_eval, master_cost,
                           master_residuals)


def timeit(fn, *, repeat=5, warmup=1):
    for _ in range(warmup):
        fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_fourier():
    f = BAFunction.from_callable(np.cosh, name="bessel_k")
    zs = np.arange(1e-3, 60.0, 0.01)  # a dense zero-scan grid, 6000 sums

    def run():
        return fourier_eval(f.xs, f.env, zs)

    t = timeit(run)
    rate = len(zs) * len(f.xs) / t / 1e6
    return t, f"{len(zs)} z-points x {len(f.xs)} nodes ({rate:,.0f} M terms/s)"


def bench_master(N=16, evals=200):
    rng = np.random.default_rng(0)
    p = rng.uniform(-np.pi, np.pi, N)
    a = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    a = (a + a.conj().T) / 2
    b = rng.normal(size=(N, N)) + 1j * rng.normal(size=(N, N))
    b = (b + b.conj().T) / 2
    vp = np.array([0.3, -1.2, 0.7, 0.05, -0.4, 1.1, 0.2], dtype=complex)
    eta = np.zeros((N, N), dtype=complex)

    def run():
        c = 0.0
        for _ in range(evals):
            E, F = master_residuals(p, a, b, vp, 0.21, eta, eta)
            c += master_cost(E, F)
        return c

    t = timeit(run)
    return t, f"{evals} residual+cost evals at N={N}"


def main():
    print(f"backend: {BACKEND}")
    for name, fn in (("fourier zero-scan", bench_fourier),
                     ("master-field cost", bench_master)):
        t, desc = fn()
        print(f"  {name:18s} {t * 1e3:9.2f} ms   {desc}")


if __name__ == "__main__":
    main()
