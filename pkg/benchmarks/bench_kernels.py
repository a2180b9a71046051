"""Compare the numba and numpy kernel backends on realistic inputs.

    python benchmarks/bench_kernels.py [--repeat N]

Inputs are built once with the exact (pure Python) code paths; only the
bitmask kernels are timed.  The first numba call per kernel is a warm-up
and is excluded.
"""
import argparse
import random
import time

import numpy as np

from arrangement_lab import kernels
from arrangement_lab.arrangement import random_arrangement
from arrangement_lab.at_infinity import rank_table
from arrangement_lab.os_algebra import EMPTY_INTERSECTION, broken_circuits, circuits
from arrangement_lab.poset import build


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def canonical(result):
    """Relabel partition outputs by first occurrence so backends compare equal."""
    seen = {}
    return [seen.setdefault(int(x), len(seen)) for x in np.asarray(result)]


def cases():
    rng = random.Random(0)
    a = random_arrangement(rng, 4, 16, coef=5, essential=True)
    masks = np.asarray([f.mask for f in build(a).flats], dtype=np.int64)
    cs = circuits(a)
    forbidden = [sum(1 << i for i in b) for b in broken_circuits(cs)]
    forbidden += [c.mask for c in cs if c.kind == EMPTY_INTERSECTION]
    forbidden = np.asarray(forbidden, dtype=np.int64)
    vecs = [tuple(rng.randint(-1, 1) for _ in range(4)) for _ in range(10)]
    vecs = [v if any(v) else (1, 0, 0, 0) for v in vecs]
    table = np.asarray(rank_table(vecs), dtype=np.int64)
    total = int(table[-1])
    return [
        (f"moebius ({masks.size} flats)",
         lambda: kernels.moebius_numba(masks), lambda: kernels.moebius_numpy(masks)),
        (f"nbc counts (n={len(a)}, {forbidden.size} forbidden)",
         lambda: kernels.avoiding_counts_numba(len(a), forbidden, a.dim),
         lambda: kernels.avoiding_counts_numpy(len(a), forbidden, a.dim)),
        ("partition oracle (n=10, 115975 partitions)",
         lambda: kernels.finest_partition_numba(10, table, total),
         lambda: kernels.finest_partition_numpy(10, table, total)),
    ]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    print(f"{'kernel':48s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'speedup':>8s}")
    for name, nb, npy in cases():
        assert canonical(nb()) == canonical(npy()), name
        t_nb = best_of(nb, args.repeat)
        t_np = best_of(npy, args.repeat)
        print(f"{name:48s} {t_nb * 1e3:11.3f} {t_np * 1e3:11.3f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
