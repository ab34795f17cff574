#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the numpy fallback.

Raw kernels are timed in-process against both implementations; the
composite FRQI pipeline is timed in child processes so each run selects
its backend at import, exactly as a user would experience it.

Usage: python benchmarks/bench_kernels.py [--pipeline-side N]
"""

import argparse
import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from qimedge._kernels import _numpy as knp  # noqa: E402

try:
    from qimedge._kernels import _core as kcore
except ImportError:
    kcore = None


def random_state(m, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=1 << m) + 1j * rng.normal(size=1 << m)
    return (a / np.linalg.norm(a)).astype(np.complex128)


def time_call(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_raw(m):
    u = (0.6 + 0.0j, 0.8j, 0.8j, 0.6 + 0.0j)
    cmask = ((1 << m) - 1) ^ 1 ^ (1 << (m - 1))
    cases = [
        ("apply_2x2      ", lambda k, a: k.apply_2x2(a, m // 2, *u)),
        ("apply_x        ", lambda k, a: k.apply_x(a, m // 2)),
        ("controlled_ry  ", lambda k, a: k.apply_controlled_ry(a, cmask, m - 1, 0.7)),
        ("decrement      ", lambda k, a: k.decrement(a)),
        ("born_p1        ", lambda k, a: k.born_p1(a, m // 2)),
    ]
    print(f"\nraw kernels on a {m}-qubit state ({1 << m} amplitudes), best of 5:")
    print(f"{'kernel':<18}{'numpy':>12}{'cython':>12}{'speedup':>9}")
    base = random_state(m)
    for name, call in cases:
        t_np = time_call(call, knp, base.copy())
        if kcore is None:
            print(f"{name:<18}{t_np * 1e6:>10.1f}us{'n/a':>12}{'':>9}")
            continue
        t_cy = time_call(call, kcore, base.copy())
        print(f"{name:<18}{t_np * 1e6:>10.1f}us{t_cy * 1e6:>10.1f}us{t_np / t_cy:>8.1f}x")


def pipeline_once(side):
    from qimedge import GrayImage, PipelineConfig, ScanDirection, scan_frqi

    rng = np.random.default_rng(1)
    img = GrayImage(rng.uniform(0.05, 0.95, (side, side)))
    t0 = time.perf_counter()
    for direction in (ScanDirection.HORIZONTAL, ScanDirection.VERTICAL):
        scan_frqi(img, direction, PipelineConfig())
    return time.perf_counter() - t0


def bench_pipeline(side):
    print(f"\nfull FRQI scan pipeline (both directions) on a {side}x{side} image:")
    for backend in ("numpy", "cython"):
        if backend == "cython" and kcore is None:
            print("  cython: extension not built, skipped")
            continue
        env = dict(os.environ, QIMEDGE_KERNELS=backend)
        out = subprocess.run(
            [sys.executable, __file__, "--pipeline-child", str(side)],
            env=env, capture_output=True, text=True, check=True,
        )
        print(f"  {backend:<7} {float(out.stdout.strip()) * 1000:9.1f} ms")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--pipeline-child", type=int, default=None, help=argparse.SUPPRESS)
    parser.add_argument("--pipeline-side", type=int, default=32)
    args = parser.parse_args()
    if args.pipeline_child is not None:
        print(pipeline_once(args.pipeline_child))
        return
    from qimedge import kernel_backend

    print(f"active backend in this process: {kernel_backend()}")
    for m in (10, 16, 20):
        bench_raw(m)
    bench_pipeline(args.pipeline_side)


if __name__ == "__main__":
    main()
