#!/usr/bin/env python3
"""Benchmark the two Levenshtein kernels against each other.

The fuzzy matcher calls the distance kernel once per thesaurus term per
query string, so per-call latency on short words is what matters, with
longer strings as a sanity check. Run:

    python3 benchmarks/bench_distance.py
"""

import random
import string
import time

from casegraph.distance import _codes, _kernel_numba, _kernel_numpy

PAIRS_PER_LENGTH = 2_000
REPEATS = 5
LENGTHS = [4, 8, 16, 64, 256]

rng = random.Random(1)


def random_pairs(length: int, count: int):
    alphabet = string.ascii_lowercase + "çãéíõú"
    pairs = []
    for _ in range(count):
        a = "".join(rng.choice(alphabet) for _ in range(length))
        b = "".join(rng.choice(alphabet) for _ in range(length))
        pairs.append((_codes(a), _codes(b)))
    return pairs


def bench(kernel, pairs) -> float:
    best = float("inf")
    for _ in range(REPEATS):
        start = time.perf_counter()
        for a, b in pairs:
            kernel(a, b)
        best = min(best, time.perf_counter() - start)
    return best / len(pairs)


if _kernel_numba is None:
    raise SystemExit("numba is not installed; nothing to compare")

# first call compiles the jitted kernel — keep it out of the timings
warm = random_pairs(8, 1)[0]
_kernel_numba(*warm)
_kernel_numpy(*warm)

print(f"{'length':>6} {'numba':>12} {'numpy':>12} {'numpy/numba':>12}")
for length in LENGTHS:
    count = max(PAIRS_PER_LENGTH // max(1, length // 8), 50)
    pairs = random_pairs(length, count)
    t_numba = bench(_kernel_numba, pairs)
    t_numpy = bench(_kernel_numpy, pairs)
    print(
        f"{length:>6} {t_numba * 1e6:>10.2f}us {t_numpy * 1e6:>10.2f}us "
        f"{t_numpy / t_numba:>11.1f}x"
    )
