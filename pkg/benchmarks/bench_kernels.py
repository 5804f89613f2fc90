"""Compiled vs numpy kernel timings.

    python benchmarks/bench_kernels.py [--repeat N]

Times the slab closed form and the multilayer matrix product on both
backends and prints the median wall time and the speed-up.
"""

import argparse
import math
import statistics
import time

import numpy as np

from hartmankit import kernels


def _median_time(fn, repeat):
    fn()  # warm-up
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def cases():
    rng = np.random.default_rng(1)
    n = 200_000
    q, p, kd = rng.uniform(0.1, 5, n), rng.uniform(0.1, 5, n), rng.uniform(0, 30, n)
    yield "slab, 2e5 samples", lambda k: k.slab_amplitudes(q, p, kd)

    for periods, freqs in ((5, 10_000), (50, 10_000), (200, 2_000)):
        layers = periods * 2
        n_l = np.tile([2.0, 1.0], periods)
        th = C_QW / (4 * n_l)
        w = 2 * math.pi * np.linspace(0.5e14, 1.5e14, freqs)
        yield f"stack, {layers} layers x {freqs} freqs", \
            (lambda k, n_l=n_l, th=th, w=w: k.stack_amplitudes(n_l, th, 1.0, 1.0, w))


C_QW = 299792458.0 / 1e14  # design wavelength for nu0 = 100 THz


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=15)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"active backend: {kernels.BACKEND}; available: {', '.join(sorted(backends))}")
    if "cython" not in backends:
        print("compiled extension not built; only the numpy timings are shown")
    print(f"{'case':<32} {'numpy [ms]':>11} {'cython [ms]':>12} {'speed-up':>9}")
    for name, fn in cases():
        t_py = _median_time(lambda: fn(backends["python"]), args.repeat)
        if "cython" in backends:
            t_c = _median_time(lambda: fn(backends["cython"]), args.repeat)
            print(f"{name:<32} {t_py * 1e3:11.3f} {t_c * 1e3:12.3f} {t_py / t_c:8.2f}x")
        else:
            print(f"{name:<32} {t_py * 1e3:11.3f} {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()
