#!/usr/bin/env python3
"""Benchmark the compiled kernel lane against the pure-numpy reference.

Times the three kernel entry points on a band-limited density (the extremal
search hot path) and on a full-band density (ensemble verification), then a
full objective evaluation through each lane, and checks the lanes agree.

Usage:
    python benchmarks/bench_kernels.py [--repeats 200]
"""

import argparse
import time

import numpy as np

import ringvar as rv
import ringvar._kernels._reference as reference

try:
    import ringvar._kernels._compiled as compiled
except ImportError:
    compiled = None


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def random_density(rng, n_modes, length):
    c = rng.standard_normal(n_modes + 1) + 1j * rng.standard_normal(n_modes + 1)
    c *= np.exp(-np.arange(n_modes + 1) / max(4.0, n_modes / 4.0))
    c[0] = 1.0 / length
    return c


def bench_case(label, fm, length, resolution, repeats):
    rows = []
    for lane in filter(None, (reference, compiled)):
        t_prof = timeit(lambda: lane.profile_curves(fm, length, resolution), repeats)
        values, _, _ = lane.profile_curves(fm, length, resolution)
        k = int(np.argmin(values))
        g0 = -length / 2 + k * length / resolution
        t_ref = timeit(
            lambda: lane.refine_minimum(fm, length, g0, length / resolution), repeats
        )
        t_pt = timeit(lambda: lane.point_eval(fm, length, 0.1234), repeats)
        rows.append((lane.BACKEND, t_prof, t_ref, t_pt))
    print(f"\n{label} (M = {len(fm) - 1} modes, R = {resolution}):")
    print(f"  {'lane':<10} {'profile':>12} {'refine':>12} {'point':>12}")
    for name, t_prof, t_ref, t_pt in rows:
        print(
            f"  {name:<10} {t_prof * 1e6:>10.1f}us {t_ref * 1e6:>10.1f}us "
            f"{t_pt * 1e6:>10.1f}us"
        )
    if len(rows) == 2:
        print(f"  speedup    {rows[0][1] / rows[1][1]:>11.1f}x "
              f"{rows[0][2] / rows[1][2]:>11.1f}x {rows[0][3] / rows[1][3]:>11.1f}x")

    if compiled is not None:
        a = reference.profile_curves(fm, length, resolution)
        b = compiled.profile_curves(fm, length, resolution)
        worst = max(
            float(np.abs(x - y).max() / max(1.0, np.abs(x).max()))
            for x, y in zip(a, b)
        )
        print(f"  lane agreement: max rel diff {worst:.2e}")


def bench_objective(repeats):
    dom = rv.PeriodicDomain(2.0 * np.pi, 256)
    cfg = rv.SearchConfig(band_limit=8)
    rng = np.random.default_rng(1)
    coeffs = rng.standard_normal(17) + 1j * rng.standard_normal(17)
    t = timeit(lambda: rv.objective(coeffs, dom, cfg), repeats)
    print(
        f"\nfull objective evaluation via active lane ({rv.kernel_backend()}): "
        f"{t * 1e6:.1f}us -> 1e6 oracle samples ~ {t * 1e6:.0f}s"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    print(f"active lane: {rv.kernel_backend()}")
    if compiled is None:
        print("compiled lane not built; timing the reference lane only")

    rng = np.random.default_rng(0)
    bench_case(
        "band-limited density (search hot path)",
        random_density(rng, 16, 2.0 * np.pi),
        2.0 * np.pi,
        256,
        args.repeats,
    )
    bench_case(
        "full-band density (ensemble verification)",
        random_density(rng, 511, 1.0),
        1.0,
        1024,
        max(10, args.repeats // 10),
    )
    bench_objective(args.repeats)


if __name__ == "__main__":
    main()
