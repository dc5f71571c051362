"""Benchmark the compiled stepping kernels against the numpy twins.

Run from the repository root after an editable install:

    python3 benchmarks/bench_kernels.py [--cells 3000] [--fp-steps 20000]
                                        [--paths 4096] [--sde-steps 2000]

Both backends receive identical inputs; the script asserts that the
outputs match bit for bit before reporting timings.
"""

import argparse
import time

import numpy as np

from radialou import RepulsionFamily, _pure
from radialou.fokker_planck import _build_tridiagonal, invariant_restriction

try:
    from radialou import _accel
except ImportError:
    _accel = None


def _time(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - t0, out


def bench_fp(impls, cells, steps):
    family = RepulsionFamily(n=3.0)
    grid = invariant_restriction(family, x_max=6.0, cells=cells)
    lo, di, up = _build_tridiagonal(family, grid, 0.8 * grid.h * grid.h)
    rho = np.asarray(grid.values)
    print(f"fp_explicit_steps: {cells} cells x {steps} steps")
    results = {}
    for name, impl in impls:
        dt, out = _time(impl.fp_explicit_steps, rho, lo, di, up, steps)
        results[name] = (dt, out)
        print(f"  {name:<8s} {dt:8.3f} s")
    _report(results)


def bench_sde(impls, paths, steps, scheme):
    rng = np.random.default_rng(12345)
    x0 = rng.uniform(0.5, 2.0, paths)
    noise = rng.standard_normal((paths, steps))
    label = ["explicit-reflect", "semi-implicit"][scheme]
    print(f"sde_evolve ({label}): {paths} paths x {steps} steps")
    results = {}
    for name, impl in impls:
        dt, out = _time(impl.sde_evolve, x0, noise, 0.0316, 1e-3, 2.0, scheme)
        results[name] = (dt, out[0])
        print(f"  {name:<8s} {dt:8.3f} s")
    _report(results)


def _report(results):
    if len(results) == 2:
        (base_t, base_v), (fast_t, fast_v) = results["numpy"], results["cython"]
        same = np.array_equal(np.asarray(base_v), np.asarray(fast_v))
        print(f"  speedup  {base_t / fast_t:8.2f}x   outputs identical: {same}")
        if not same:
            raise SystemExit("backend outputs differ")
    print()


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cells", type=int, default=3000)
    parser.add_argument("--fp-steps", type=int, default=20000)
    parser.add_argument("--paths", type=int, default=4096)
    parser.add_argument("--sde-steps", type=int, default=2000)
    args = parser.parse_args()

    impls = [("numpy", _pure)]
    if _accel is not None:
        impls.append(("cython", _accel))
    else:
        print("compiled backend not importable; timing numpy only\n")

    bench_fp(impls, args.cells, args.fp_steps)
    bench_sde(impls, args.paths, args.sde_steps, scheme=1)
    bench_sde(impls, args.paths, args.sde_steps, scheme=0)


if __name__ == "__main__":
    main()
