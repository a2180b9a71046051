import random

import pytest

from arrangement_lab import exact_linalg as la
from arrangement_lab import kernels
from arrangement_lab.arrangement import Arrangement, boolean
from arrangement_lab.errors import TooLarge
from arrangement_lab.os_algebra import (
    DEPENDENT_CENTRAL,
    EMPTY_INTERSECTION,
    Circuit,
    broken_circuits,
    circuits,
    nbc_profile,
    nbc_sets,
)
from arrangement_lab.poset import betti_and_euler

from helpers import random_suite, rows


def central_independent(a, s):
    sol = la.solve_affine([list(a[i].normal) for i in s], [a[i].offset for i in s], cols=a.dim)
    return not sol.is_empty and a.dim - sol.dim == len(s)


def test_circuit_examples(boolean3, concurrent3, parallel_pair):
    assert circuits(boolean3) == []
    assert circuits(concurrent3) == [Circuit((0, 1, 2), DEPENDENT_CENTRAL)]
    assert circuits(parallel_pair) == [Circuit((0, 1), EMPTY_INTERSECTION)]


def test_triangle_has_empty_intersection_circuit():
    tri = rows([1, 0, 0], [0, 1, 0], [1, 1, 1])
    assert circuits(tri) == [Circuit((0, 1, 2), EMPTY_INTERSECTION)]
    assert nbc_profile(tri) == (1, 3, 3)


def test_nbc_examples(boolean3, concurrent3, parallel_line):
    assert nbc_profile(boolean3) == (1, 3, 3, 1)
    assert nbc_profile(concurrent3) == (1, 3, 2)
    assert broken_circuits(circuits(concurrent3)) == [(1, 2)]
    assert [s for s in nbc_sets(concurrent3) if len(s) == 2] == [(0, 1), (0, 2)]
    assert nbc_profile(parallel_line) == (1, 3, 2)
    assert [s for s in nbc_sets(parallel_line) if len(s) == 2] == [(0, 2), (1, 2)]


def test_circuits_are_minimal():
    for a in random_suite(40, seed=21, max_n=7):
        for c in circuits(a):
            assert not central_independent(a, c.indices)
            for j in range(len(c.indices)):
                sub = c.indices[:j] + c.indices[j + 1:]
                assert central_independent(a, sub)
            sol = la.solve_affine([list(a[i].normal) for i in c.indices],
                                  [a[i].offset for i in c.indices], cols=a.dim)
            assert (c.kind == EMPTY_INTERSECTION) == sol.is_empty


def test_nbc_equals_betti_random():
    for a in random_suite(80, seed=22, max_n=10):
        assert nbc_profile(a) == betti_and_euler(a)[0], a.to_dict()


def test_nbc_counts_order_independent():
    rng = random.Random(23)
    for a in random_suite(20, seed=24, max_n=8):
        expected = nbc_profile(a)
        for _ in range(3):
            perm = list(a.hyperplanes)
            rng.shuffle(perm)
            assert nbc_profile(Arrangement(a.dim, tuple(perm))) == expected


def test_no_nbc_sets_beyond_dimension():
    for a in random_suite(20, seed=25, max_n=8):
        cs = circuits(a)
        forbidden = [sum(1 << i for i in b) for b in broken_circuits(cs)]
        forbidden += [c.mask for c in cs if c.kind == EMPTY_INTERSECTION]
        counts = kernels.avoiding_counts(len(a), forbidden, len(a))
        assert all(x == 0 for x in counts[a.dim + 1:])


def test_bound():
    with pytest.raises(TooLarge):
        nbc_profile(boolean(5), bound=4)
    with pytest.raises(TooLarge):
        circuits(boolean(5), bound=4)
