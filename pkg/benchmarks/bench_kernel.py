#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python twin.

Three workloads: raw independence queries, exchange-pair scans, and a full
connectivity verification on K4 under both flavors of bias.

Usage: python benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import time

from framex.biased import bicircular_bias, graphic_bias
from framex.graph import MultiGraph
from framex.kernel import available_backends
from framex.matroid import FrameMatroid
from framex.exchange import white_verify


def k4():
    return MultiGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def rungs():
    return MultiGraph(
        5,
        [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 2), (2, 3), (2, 3), (3, 4), (3, 4)],
    )


def bench_independence(backend, repeat):
    m = FrameMatroid(bicircular_bias(rungs()), "frame", backend=backend)
    kern = m._kernel
    masks = list(range(1 << m.size))
    t0 = time.perf_counter()
    for _ in range(repeat):
        for mask in masks:
            kern.is_independent(mask)
    elapsed = time.perf_counter() - t0
    return repeat * len(masks), elapsed


def bench_exchange_pairs(backend, repeat):
    m = FrameMatroid(bicircular_bias(k4()), "frame", backend=backend)
    bases = m.bases()
    t0 = time.perf_counter()
    n = 0
    for _ in range(repeat):
        for b1 in bases:
            for b2 in bases:
                m.exchange_pairs(b1, b2)
                n += 1
    return n, time.perf_counter() - t0


def bench_white(backend, repeat):
    t0 = time.perf_counter()
    n = 0
    for _ in range(repeat):
        for bias in (graphic_bias(k4()), bicircular_bias(k4())):
            m = FrameMatroid(bias, "frame", backend=backend)
            rep = white_verify(m, 2)
            assert rep.ok
            n += rep.state_count
    return n, time.perf_counter() - t0


WORKLOADS = [
    ("independence", bench_independence, 20),
    ("exchange-pairs", bench_exchange_pairs, 20),
    ("white-k2", bench_white, 3),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=1, help="scale every workload")
    args = ap.parse_args()
    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'workload':16s} {'backend':9s} {'ops':>10s} {'seconds':>9s} {'ops/s':>12s}")
    speedups = {}
    for name, fn, base_repeat in WORKLOADS:
        for backend in backends:
            ops, elapsed = fn(backend, base_repeat * args.repeat)
            rate = ops / elapsed if elapsed else float("inf")
            print(f"{name:16s} {backend:9s} {ops:10d} {elapsed:9.3f} {rate:12.0f}")
            speedups.setdefault(name, {})[backend] = elapsed
    if len(backends) == 2:
        print()
        for name, times in speedups.items():
            print(f"{name}: compiled is {times['pure'] / times['compiled']:.1f}x faster")


if __name__ == "__main__":
    main()
