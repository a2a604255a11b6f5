"""Time the pure-Python and Cython kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import timeit

from sgscore import kernels


def matching_inputs(rng: random.Random, n: int = 200, density: float = 0.05):
    return n, [sorted(j for j in range(n) if rng.random() < density) for _ in range(n)]


def lcs_inputs(rng: random.Random, n: int = 400):
    return [rng.randrange(20) for _ in range(n)], [rng.randrange(20) for _ in range(n)]


def kendall_inputs(rng: random.Random, n: int = 1000):
    return [float(rng.randint(1, 5)) for _ in range(n)], [rng.random() for _ in range(n)]


CASES = {
    "max_matching": ("max_matching", matching_inputs),
    "lcs_length": ("lcs_length", lcs_inputs),
    "kendall_counts": ("kendall_counts", kendall_inputs),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=10)
    args = ap.parse_args()
    backends = sorted(kernels.BACKENDS)
    print("kernel\t" + "\t".join(f"{b}_ms" for b in backends) + ("\tspeedup" if len(backends) == 2 else ""))
    for name, (attr, make) in CASES.items():
        inputs = make(random.Random(0))
        times = {}
        for b in backends:
            fn = getattr(kernels.BACKENDS[b], attr)
            best = min(timeit.repeat(lambda: fn(*inputs), repeat=args.repeat, number=args.number))
            times[b] = 1000 * best / args.number
        row = [name] + [f"{times[b]:.3f}" for b in backends]
        if len(backends) == 2:
            row.append(f"{times['python'] / times['cython']:.1f}x")
        print("\t".join(row))
    if "cython" not in kernels.BACKENDS:
        print("# compiled extension not built; only the pure-Python backend was timed")


if __name__ == "__main__":
    main()
