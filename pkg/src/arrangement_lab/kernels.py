"""Bitmask kernels for the combinatorial inner loops.

Index sets of hyperplanes are packed into ``int64`` bitmasks (bit ``i`` set
iff hyperplane ``i`` is a member), which caps these kernels at 62
hyperplanes.  Each kernel has a numba implementation and a plain numpy one;
the dispatchers pick one according to ``ARRANGEMENT_LAB_KERNELS``
(``numba`` or ``numpy``, default ``numba`` when it imports).  Inputs wider
than 62 bits fall back to a pure-Python loop.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

MAX_BITS = 62


def _default_backend() -> str:
    name = os.environ.get("ARRANGEMENT_LAB_KERNELS", "numba" if HAVE_NUMBA else "numpy")
    name = name.strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"ARRANGEMENT_LAB_KERNELS must be 'numba' or 'numpy', not {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        return "numpy"
    return name


BACKEND = _default_backend()


def set_backend(name: str) -> str:
    """Switch the active backend; returns the previous one."""
    global BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(name)
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    old, BACKEND = BACKEND, name
    return old


def _fits(masks) -> bool:
    return all(0 <= m < (1 << MAX_BITS) for m in masks)


# ---------------------------------------------------------------------------
# Moebius function over a rank-sorted family of index sets


def moebius_python(masks):
    mu = []
    for i, m in enumerate(masks):
        if i == 0:
            mu.append(1)
            continue
        s = 0
        for j in range(i):
            if masks[j] & m == masks[j] and masks[j] != m:
                s += mu[j]
        mu.append(-s)
    return mu


def moebius_numpy(masks: np.ndarray) -> np.ndarray:
    n = masks.shape[0]
    mu = np.zeros(n, dtype=np.int64)
    if n == 0:
        return mu
    mu[0] = 1
    for i in range(1, n):
        below = masks[:i]
        sub = (below & masks[i]) == below
        mu[i] = -mu[:i][sub].sum()
    return mu


def _moebius_nb(masks):
    n = masks.shape[0]
    mu = np.zeros(n, dtype=np.int64)
    if n == 0:
        return mu
    mu[0] = 1
    for i in range(1, n):
        m = masks[i]
        s = 0
        for j in range(i):
            if (masks[j] & m) == masks[j]:
                s += mu[j]
        mu[i] = -s
    return mu


# ---------------------------------------------------------------------------
# Counting subsets that avoid a family of forbidden submasks


def avoiding_counts_python(n, forbidden, max_size):
    counts = [0] * (max_size + 1)
    counts[0] = 1

    def grow(mask, start, size):
        for e in range(start, n):
            m = mask | (1 << e)
            if any(m & f == f for f in forbidden):
                continue
            counts[size + 1] += 1
            if size + 1 < max_size:
                grow(m, e + 1, size + 1)

    if max_size > 0:
        grow(0, 0, 0)
    return counts


def avoiding_counts_numpy(n: int, forbidden: np.ndarray, max_size: int) -> np.ndarray:
    counts = np.zeros(max_size + 1, dtype=np.int64)
    counts[0] = 1
    level = np.zeros(1, dtype=np.int64)
    top = np.full(1, -1, dtype=np.int64)  # largest element of each set
    elements = np.arange(n, dtype=np.int64)
    for size in range(1, max_size + 1):
        if level.size == 0:
            break
        ext = elements[None, :] > top[:, None]
        rows, cols = np.nonzero(ext)
        new = level[rows] | (np.int64(1) << cols)
        if forbidden.size:
            bad = ((new[:, None] & forbidden[None, :]) == forbidden[None, :]).any(axis=1)
            keep = ~bad
            new, cols = new[keep], cols[keep]
        counts[size] = new.size
        level, top = new, cols
    return counts


def _avoiding_counts_nb(n, forbidden, max_size):
    counts = np.zeros(max_size + 1, dtype=np.int64)
    counts[0] = 1
    if max_size == 0 or n == 0:
        return counts
    stack_mask = np.zeros(max_size + 1, dtype=np.int64)
    stack_next = np.zeros(max_size + 1, dtype=np.int64)
    depth = 0
    one = np.int64(1)
    while depth >= 0:
        e = stack_next[depth]
        if e >= n:
            depth -= 1
            continue
        stack_next[depth] = e + 1
        m = stack_mask[depth] | (one << e)
        ok = True
        for k in range(forbidden.shape[0]):
            f = forbidden[k]
            if (m & f) == f:
                ok = False
                break
        if not ok:
            continue
        size = depth + 1
        counts[size] += 1
        if size < max_size:
            depth += 1
            stack_mask[depth] = m
            stack_next[depth] = e + 1
    return counts


# ---------------------------------------------------------------------------
# Finest rank-additive set partition (brute force over all set partitions)


def finest_partition_python(n, rank_table, total):
    best, best_k = [0] * n, 1 if n else 0
    a = [0] * n
    while True:
        k = max(a) + 1 if n else 0
        if k > best_k:
            blocks = [0] * k
            for i, b in enumerate(a):
                blocks[b] |= 1 << i
            if sum(rank_table[m] for m in blocks) == total:
                best, best_k = list(a), k
        for i in range(n - 1, 0, -1):
            if a[i] <= max(a[:i]):
                a[i] += 1
                for j in range(i + 1, n):
                    a[j] = 0
                break
        else:
            return best


def _all_rgs(n: int) -> np.ndarray:
    """Every restricted growth string of length n, one per row."""
    rgs = np.zeros((1, max(n, 1)), dtype=np.int8)
    if n == 0:
        return rgs[:, :0]
    mx = np.zeros(1, dtype=np.int8)
    for pos in range(1, n):
        reps = (mx + 2).astype(np.int64)
        parent = np.repeat(np.arange(rgs.shape[0]), reps)
        offsets = np.arange(parent.size) - np.repeat(np.cumsum(reps) - reps, reps)
        rgs = rgs[parent]
        rgs[:, pos] = offsets
        mx = np.maximum(mx[parent], offsets.astype(np.int8))
    return rgs


def finest_partition_numpy(n: int, rank_table: np.ndarray, total: int) -> np.ndarray:
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rgs = _all_rgs(n).astype(np.int64)
    weights = np.int64(1) << np.arange(n, dtype=np.int64)
    rank_sum = np.zeros(rgs.shape[0], dtype=np.int64)
    for b in range(n):
        block = ((rgs == b) * weights).sum(axis=1)
        rank_sum += rank_table[block]
    nblocks = rgs.max(axis=1) + 1
    nblocks[rank_sum != total] = 0
    return rgs[int(np.argmax(nblocks))]


def _finest_partition_nb(n, rank_table, total):
    a = np.zeros(n, dtype=np.int64)
    best = np.zeros(n, dtype=np.int64)
    if n == 0:
        return best
    best_k = 1
    blocks = np.zeros(n, dtype=np.int64)
    one = np.int64(1)
    while True:
        k = 0
        for i in range(n):
            if a[i] + 1 > k:
                k = a[i] + 1
        if k > best_k:
            for b in range(k):
                blocks[b] = 0
            for i in range(n):
                blocks[a[i]] |= one << i
            s = 0
            for b in range(k):
                s += rank_table[blocks[b]]
            if s == total:
                best_k = k
                best[:] = a
        advanced = False
        for i in range(n - 1, 0, -1):
            mx = 0
            for j in range(i):
                if a[j] > mx:
                    mx = a[j]
            if a[i] <= mx:
                a[i] += 1
                for j in range(i + 1, n):
                    a[j] = 0
                advanced = True
                break
        if not advanced:
            return best


if HAVE_NUMBA:
    moebius_numba = njit(cache=True)(_moebius_nb)
    avoiding_counts_numba = njit(cache=True)(_avoiding_counts_nb)
    finest_partition_numba = njit(cache=True)(_finest_partition_nb)
else:  # pragma: no cover
    moebius_numba = avoiding_counts_numba = finest_partition_numba = None


# ---------------------------------------------------------------------------
# dispatchers


def moebius(masks) -> list[int]:
    """Moebius values for index-set masks sorted so that subsets come first.

    ``masks[0]`` must be the bottom element (empty set); ``mu[i]`` is minus
    the sum of ``mu`` over all strict submasks of ``masks[i]``.
    """
    masks = list(masks)
    if not _fits(masks):
        return moebius_python(masks)
    arr = np.asarray(masks, dtype=np.int64)
    fn = moebius_numba if BACKEND == "numba" else moebius_numpy
    return [int(x) for x in fn(arr)]


def avoiding_counts(n: int, forbidden, max_size: int) -> list[int]:
    """``counts[k]`` = number of k-subsets of range(n) containing no forbidden mask."""
    forbidden = list(forbidden)
    if n > MAX_BITS:
        return avoiding_counts_python(n, forbidden, max_size)
    arr = np.asarray(forbidden, dtype=np.int64).reshape(-1)
    fn = avoiding_counts_numba if BACKEND == "numba" else avoiding_counts_numpy
    return [int(x) for x in fn(n, arr, max_size)]


def finest_partition(n: int, rank_table, total: int) -> list[int]:
    """Block labels of the finest partition whose block ranks sum to ``total``.

    ``rank_table[mask]`` is the rank of the subset ``mask`` of range(n).
    Brute force over all Bell(n) set partitions, intended for n <= 10.
    """
    arr = np.asarray(rank_table, dtype=np.int64)
    fn = finest_partition_numba if BACKEND == "numba" else finest_partition_numpy
    return [int(x) for x in fn(n, arr, int(total))]
