"""Timing comparison of the compiled and pure-numpy amplitude kernels.

Run as `python -m fcl.benchmark [--L N] [--walk-L N] [--reps N]`. Times one
Floquet sweep over a spin state and one full walk step (coin + shift +
exchange + spin Floquet), per backend, and prints the speedup.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from ._kernels import pyref

try:
    from ._kernels import _core
except ImportError:
    _core = None


def _random_amps(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=n) + 1j * rng.normal(size=n)
    return np.ascontiguousarray(amps / np.linalg.norm(amps))


def _time(fn, reps: int) -> float:
    fn()  # warm up
    start = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - start) / reps


def _bench_spin(mod, L: int, reps: int) -> float:
    amps = _random_amps(1 << L, seed=1)
    return _time(lambda: mod.floquet_sweep(amps, L, 0.3, 0.1), reps)


def _bench_walk(mod, L: int, reps: int) -> float:
    amps = _random_amps(L * 2 * (1 << L), seed=2)

    def one_step():
        view = amps.reshape(L, 2, 1 << L)
        rolled = np.empty_like(view)
        rolled[:, 0] = np.roll(view[:, 1], 1, axis=0)
        rolled[:, 1] = np.roll(view[:, 0], -1, axis=0)
        amps[:] = rolled.reshape(-1)
        mod.exchange_sweep(amps, L, 0.8)
        mod.floquet_sweep(amps, L, 0.3, 0.1)

    return _time(one_step, reps)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="python -m fcl.benchmark")
    parser.add_argument("--L", type=int, default=16, help="spin chain size")
    parser.add_argument("--walk-L", type=int, default=12, help="walk ring size")
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args(argv)

    backends = [("python", pyref)] + ([("compiled", _core)] if _core else [])
    print(f"{'kernel':<24}{'backend':<12}{'ms/call':>10}")
    times: dict[tuple[str, str], float] = {}
    for kernel, bench, L in (("floquet_sweep", _bench_spin, args.L),
                             ("walk_step", _bench_walk, args.walk_L)):
        for name, mod in backends:
            dt = bench(mod, L, args.reps)
            times[(kernel, name)] = dt
            print(f"{kernel + f' (L={L})':<24}{name:<12}{dt * 1e3:>10.3f}")
        if _core:
            speedup = times[(kernel, "python")] / times[(kernel, "compiled")]
            print(f"{'':<24}{'speedup':<12}{speedup:>9.1f}x")
    if not _core:
        print("compiled backend not available; built python-only")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
