"""Projective closure, linear-matroid connectivity and dense edges at infinity.

Coning turns ``a . x = c`` into the linear form ``(a, -c)`` on
``Q^(dim+1)`` and adds the hyperplane at infinity ``x_(dim+1) = 0``.
Edges of the projective closure are then the flats of this central
arrangement, and an edge inside H_inf is dense when the normals of the
hyperplanes through it form a connected matroid.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exact_linalg as la
from . import kernels
from .arrangement import Arrangement, Hyperplane, is_essential
from .errors import NotEssential, TooLarge, ZeroVector
from .poset import build

INFINITY_LABEL = "H_inf"
BRUTE_FORCE_BOUND = 10


@dataclass(frozen=True)
class ConedArrangement:
    base: Arrangement
    homogenized_normals: tuple
    infinity_index: int

    @property
    def central(self) -> Arrangement:
        """The cone as a central arrangement in dimension dim + 1."""
        labels = self.base.labels + [INFINITY_LABEL]
        return Arrangement(
            self.base.dim + 1,
            tuple(Hyperplane(v, 0, lab) for v, lab in zip(self.homogenized_normals, labels)),
        )

    def label(self, i: int) -> str:
        return INFINITY_LABEL if i == self.infinity_index else self.base[i].label


@dataclass(frozen=True)
class DenseEdge:
    flat_indices: tuple
    rank: int
    dense: bool
    components: tuple = ()


def cone(a: Arrangement) -> ConedArrangement:
    vectors = [h.normal + (-h.offset,) for h in a.hyperplanes]
    vectors.append(tuple(Fraction(int(i == a.dim)) for i in range(a.dim + 1)))
    return ConedArrangement(a, tuple(vectors), len(a))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def _blocks(labels) -> list:
    groups = {}
    for i, b in enumerate(labels):
        groups.setdefault(b, []).append(i)
    return sorted(tuple(g) for g in groups.values())


def matroid_components(vectors) -> list:
    """Connected components of the linear matroid on ``vectors``.

    A greedy basis B is chosen; each non-basis element is joined to the
    basis elements appearing with nonzero coefficient in its expansion
    (its fundamental circuit).  The components of that graph are the
    matroid components.  Returns sorted tuples of indices.
    """
    vectors = [tuple(la.as_rat(x) for x in v) for v in vectors]
    for i, v in enumerate(vectors):
        if not any(v):
            raise ZeroVector(f"vector {i} is zero")
    if not vectors:
        return []
    basis = []
    for i, v in enumerate(vectors):
        if la.rank([vectors[j] for j in basis] + [v]) > len(basis):
            basis.append(i)
    uf = _UnionFind(len(vectors))
    basis_set = set(basis)
    # columns of the system are the basis vectors
    cols = [[vectors[j][r] for j in basis] for r in range(len(vectors[0]))]
    for e, v in enumerate(vectors):
        if e in basis_set:
            continue
        coords = la.solve_affine(cols, v, cols=len(basis)).point
        for j, c in zip(basis, coords):
            if c:
                uf.union(e, j)
    return _blocks([uf.find(i) for i in range(len(vectors))])


def rank_table(vectors) -> list:
    """Exact rank of every subset of ``vectors``, indexed by bitmask."""
    n = len(vectors)
    table = [0] * (1 << n)
    for mask in range(1, 1 << n):
        table[mask] = la.rank([vectors[i] for i in range(n) if mask >> i & 1])
    return table


def matroid_components_bruteforce(vectors, bound: int = BRUTE_FORCE_BOUND) -> list:
    """Components as the finest set partition whose block ranks add up to the total rank."""
    vectors = [tuple(la.as_rat(x) for x in v) for v in vectors]
    if len(vectors) > bound:
        raise TooLarge(f"brute-force partition oracle limited to {bound} vectors")
    for i, v in enumerate(vectors):
        if not any(v):
            raise ZeroVector(f"vector {i} is zero")
    table = rank_table(vectors)
    labels = kernels.finest_partition(len(vectors), table, table[-1])
    return _blocks(labels)


def dense_edges(a: Arrangement, coned: ConedArrangement | None = None) -> list:
    """All edges of the projective closure lying in H_inf, with density flags.

    Edges come from the intersection poset of the cone; the cone's origin
    is excluded.  H_inf alone counts as dense (a single hyperplane is
    indecomposable).
    """
    if not is_essential(a):
        raise NotEssential("dense edges at infinity require an essential arrangement")
    coned = cone(a) if coned is None else coned
    central = coned.central
    poset = build(central)
    inf = coned.infinity_index
    edges = []
    for flat in poset.flats:
        if inf not in flat.index_set or flat.rank == central.dim:
            continue
        vecs = [coned.homogenized_normals[i] for i in flat.index_set]
        comps = matroid_components(vecs)
        comps = tuple(tuple(flat.index_set[i] for i in c) for c in comps)
        edges.append(DenseEdge(flat.index_set, flat.rank, len(comps) == 1, comps))
    return edges
