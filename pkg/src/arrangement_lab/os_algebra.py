"""Betti numbers of the complement from broken-circuit (nbc) counting.

This is an independent route to the Betti numbers: it never looks at the
intersection poset, only at which subsets of hyperplanes are central and
independent.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import exact_linalg as la
from . import kernels
from .arrangement import Arrangement
from .errors import TooLarge

DEFAULT_BOUND = 16

DEPENDENT_CENTRAL = "dependent_central"
EMPTY_INTERSECTION = "empty_intersection"


@dataclass(frozen=True, order=True)
class Circuit:
    indices: tuple
    kind: str

    @property
    def mask(self) -> int:
        return sum(1 << i for i in self.indices)


def _status(a: Arrangement, s) -> str | None:
    """None if ``s`` is central and independent, else the kind of failure."""
    sol = la.solve_affine([list(a[i].normal) for i in s], [a[i].offset for i in s], cols=a.dim)
    if sol.is_empty:
        return EMPTY_INTERSECTION
    if a.dim - sol.dim < len(s):
        return DEPENDENT_CENTRAL
    return None


def _check_size(a, bound):
    bound = DEFAULT_BOUND if bound is None else bound
    if len(a) > bound:
        raise TooLarge(f"{len(a)} hyperplanes exceeds the bound {bound}")


def circuits(a: Arrangement, bound: int | None = None) -> list:
    """Minimal subsets that are dependent or have empty intersection.

    Candidates of size k are only formed from good (central, independent)
    sets of size k-1 all of whose (k-1)-subsets are good, so every bad
    candidate is automatically minimal.  Sorted by size, then indices.
    """
    _check_size(a, bound)
    n = len(a)
    found = []
    level = [()]
    good = {()}
    while level:
        nxt = []
        for g in level:
            start = g[-1] + 1 if g else 0
            for e in range(start, n):
                s = g + (e,)
                if any(s[:j] + s[j + 1:] not in good for j in range(len(s) - 1)):
                    continue
                kind = _status(a, s)
                if kind is None:
                    nxt.append(s)
                else:
                    found.append(Circuit(s, kind))
        good.update(nxt)
        level = nxt
    return sorted(found, key=lambda c: (len(c.indices), c.indices))


def broken_circuits(cs) -> list:
    """Dependent central circuits with their smallest index removed."""
    return [c.indices[1:] for c in cs if c.kind == DEPENDENT_CENTRAL]


def nbc_profile(a: Arrangement, bound: int | None = None, cs=None) -> tuple:
    """``counts[k]`` = number of nbc sets of size k, for k = 0..dim.

    A set is nbc when it is central, independent, and contains no broken
    circuit.  A set avoiding every broken circuit avoids every dependent
    central circuit too, so it is enough to forbid broken circuits and
    empty-intersection circuits; the count is then a pure bitmask
    enumeration.
    """
    _check_size(a, bound)
    cs = circuits(a, bound) if cs is None else cs
    forbidden = [sum(1 << i for i in b) for b in broken_circuits(cs)]
    forbidden += [c.mask for c in cs if c.kind == EMPTY_INTERSECTION]
    return tuple(kernels.avoiding_counts(len(a), forbidden, a.dim))


def nbc_sets(a: Arrangement, bound: int | None = None) -> list:
    """The nbc sets themselves (small inputs; used for inspection and tests)."""
    import itertools

    _check_size(a, bound)
    cs = circuits(a, bound)
    forbidden = [set(b) for b in broken_circuits(cs)]
    forbidden += [set(c.indices) for c in cs if c.kind == EMPTY_INTERSECTION]
    out = []
    for k in range(a.dim + 1):
        for s in itertools.combinations(range(len(a)), k):
            if not any(f <= set(s) for f in forbidden):
                out.append(s)
    return out
