"""Compare the pure-Python and compiled exact GED kernels.

Generates random labeled trees, runs every available kernel over the
same instances, checks that they agree, and prints per-size timings.

Usage:
    python3 benchmarks/bench_ged.py --sizes 4 6 8 10 --trials 30
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from review_diffusion.similarity import active_kernel_name, available_kernels

ALPHABET = "abcdefgh"


def random_instance(rng: random.Random, nodes: int):
    """A pair of random trees plus the unit-cost substitution matrix."""

    def tree(n):
        parents = [-1] + [rng.randrange(i) for i in range(1, n)]
        labels = [rng.choice(ALPHABET) for _ in range(n)]
        return labels, np.asarray(parents, dtype=np.intc)

    labels1, p1 = tree(nodes)
    labels2, p2 = tree(nodes)
    sub = np.empty((nodes, nodes), dtype=np.float64)
    for i, l1 in enumerate(labels1):
        for j, l2 in enumerate(labels2):
            sub[i, j] = 0.0 if l1 == l2 else 1.0
    return p1, p2, sub


def bench(kernel, instances) -> tuple[float, list[float]]:
    costs = []
    started = time.perf_counter()
    for p1, p2, sub in instances:
        costs.append(float(kernel(p1, p2, sub, 1.0, 1.0, 1.0, 1.0)))
    return time.perf_counter() - started, costs


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 6, 8, 10])
    parser.add_argument("--trials", type=int, default=30)
    parser.add_argument("--seed", type=int, default=97)
    args = parser.parse_args(argv)

    kernels = available_kernels()
    print(f"kernels: {', '.join(kernels)} (active: {active_kernel_name()})")
    print(f"{'nodes':>5}  " + "".join(f"{name + ' ms/pair':>18}" for name in kernels)
          + f"{'speedup':>10}")

    rng = random.Random(args.seed)
    for size in args.sizes:
        instances = [random_instance(rng, size) for _ in range(args.trials)]
        timings = {}
        results = {}
        for name, kernel in kernels.items():
            elapsed, costs = bench(kernel, instances)
            timings[name] = 1000.0 * elapsed / args.trials
            results[name] = costs
        baseline = results["pure"]
        for name, costs in results.items():
            if costs != baseline:
                raise SystemExit(f"kernel {name} disagrees with pure at {size} nodes")
        row = f"{size:>5}  " + "".join(f"{timings[name]:>18.3f}" for name in kernels)
        if "compiled" in timings:
            row += f"{timings['pure'] / timings['compiled']:>9.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
