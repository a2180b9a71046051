"""Intersection poset L(A), Moebius function and characteristic polynomial."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

from . import exact_linalg as la
from . import kernels
from .arrangement import Arrangement
from .errors import DimensionTooSmall, OracleTooLarge

DEFAULT_ORACLE_BOUND = 20


def default_oracle_bound() -> int:
    value = os.environ.get("ARRANGEMENT_LAB_ORACLE_BOUND")
    return int(value) if value else DEFAULT_ORACLE_BOUND


@dataclass(frozen=True)
class Flat:
    """A nonempty intersection of hyperplanes, identified by its closed index set."""

    index_set: tuple
    dim: int
    rank: int
    witness: la.AffineSolution = field(compare=False, repr=False)

    @property
    def mask(self) -> int:
        m = 0
        for i in self.index_set:
            m |= 1 << i
        return m

    def sort_key(self):
        return (self.rank, self.index_set)


@dataclass(frozen=True)
class CharPoly:
    """Integer polynomial of degree ``len(coeffs) - 1``; ``coeffs[k]`` multiplies t^(deg-k)."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        value = 0
        for c in self.coeffs:
            value = value * t + c
        return value

    def __sub__(self, other: "CharPoly") -> "CharPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = (0,) * (n - len(self.coeffs)) + self.coeffs
        b = (0,) * (n - len(other.coeffs)) + other.coeffs
        out = [x - y for x, y in zip(a, b)]
        while len(out) > 1 and out[0] == 0:
            out.pop(0)
        return CharPoly(tuple(out))

    def truncated(self) -> "CharPoly":
        """``(p(t) - p(0)) / t``."""
        if self.degree < 1:
            raise DimensionTooSmall("cannot truncate a constant polynomial")
        return CharPoly(self.coeffs[:-1])

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            p = self.degree - k
            mag = abs(c)
            body = "" if (mag == 1 and p > 0) else str(mag)
            if p >= 1:
                body += "t" if p == 1 else f"t^{p}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


class IntersectionPoset:
    """Flats of an arrangement in canonical order (rank, then index set).

    ``flats[0]`` is the whole space.  The order is reverse inclusion of
    subspaces, i.e. inclusion of index sets.
    """

    def __init__(self, dim: int, n: int, flats, moebius=None):
        self.dim = dim
        self.n = n
        self.flats = sorted(flats, key=Flat.sort_key)
        self._index = {f.index_set: i for i, f in enumerate(self.flats)}
        if moebius is None:
            moebius = kernels.moebius([f.mask for f in self.flats])
        self.moebius = list(moebius)

    def __len__(self):
        return len(self.flats)

    def __iter__(self):
        return iter(self.flats)

    def index_of(self, index_set) -> int:
        return self._index[tuple(index_set)]

    def mu(self, flat: Flat) -> int:
        return self.moebius[self.index_of(flat.index_set)]

    @staticmethod
    def leq(x: Flat, y: Flat) -> bool:
        return set(x.index_set) <= set(y.index_set)

    def rank_profile(self) -> tuple:
        top = max((f.rank for f in self.flats), default=0)
        counts = [0] * (top + 1)
        for f in self.flats:
            counts[f.rank] += 1
        return tuple(counts)

    def by_rank(self, r: int) -> list:
        return [f for f in self.flats if f.rank == r]

    def char_poly(self) -> CharPoly:
        coeffs = [0] * (self.dim + 1)
        for f, m in zip(self.flats, self.moebius):
            coeffs[self.dim - f.dim] += m
        return CharPoly(coeffs)


def _flat_of(a: Arrangement, index_set) -> la.AffineSolution:
    rows = [list(a[i].normal) for i in index_set]
    return la.solve_affine(rows, [a[i].offset for i in index_set], cols=a.dim)


def build(a: Arrangement) -> IntersectionPoset:
    """Enumerate L(A) by closure-driven breadth-first search.

    For each flat X, every hyperplane H not containing X is restricted to
    X.  Hyperplanes whose restrictions coincide cut out the same covering
    flat, so grouping the restricted equations by their primitive form
    yields the closed index sets of all flats covering X directly.
    """
    root = la.solve_affine([], [], cols=a.dim)
    flats = {(): Flat((), a.dim, 0, root)}
    frontier = [()]
    while frontier:
        children = {}
        for key in frontier:
            x = flats[key]
            point, dirs = x.witness.point, x.witness.directions
            if not dirs:
                continue
            members = set(key)
            groups = {}
            for i, h in enumerate(a.hyperplanes):
                if i in members:
                    continue
                lin = tuple(la.dot(h.normal, d) for d in dirs)
                if not any(lin):
                    continue  # parallel to X and disjoint from it
                g = la.primitive(lin + (h.offset - la.dot(h.normal, point),))
                groups.setdefault(g, []).append(i)
            for idx in groups.values():
                child = tuple(sorted(members.union(idx)))
                if child not in flats and child not in children:
                    children[child] = None
        frontier = []
        for child in sorted(children):
            w = _flat_of(a, child)
            flats[child] = Flat(child, w.dim, a.dim - w.dim, w)
            frontier.append(child)
    return IntersectionPoset(a.dim, len(a), flats.values())


def moebius(p: IntersectionPoset) -> dict:
    return {f.index_set: m for f, m in zip(p.flats, p.moebius)}


def char_poly(a: Arrangement) -> CharPoly:
    return build(a).char_poly()


def char_poly_whitney(a: Arrangement, bound: int | None = None) -> CharPoly:
    """Subset-sum oracle: sum over S with nonempty intersection of (-1)^|S| t^dim(cap S).

    Exponential in |A|; used to cross-check :func:`char_poly`.
    """
    bound = default_oracle_bound() if bound is None else bound
    if len(a) > bound:
        raise OracleTooLarge(f"{len(a)} hyperplanes exceeds the oracle bound {bound}")
    coeffs = [0] * (a.dim + 1)
    for k in range(len(a) + 1):
        sign = -1 if k % 2 else 1
        for s in itertools.combinations(range(len(a)), k):
            sol = _flat_of(a, s)
            if not sol.is_empty:
                coeffs[a.dim - sol.dim] += sign
    return CharPoly(coeffs)


def truncate(p: IntersectionPoset) -> IntersectionPoset:
    """Drop the flats of rank ``dim`` (the points, for an essential arrangement)."""
    keep = [(f, m) for f, m in zip(p.flats, p.moebius) if f.rank < p.dim]
    return IntersectionPoset(p.dim, p.n, [f for f, _ in keep], [m for _, m in keep])


def section_char_poly(a: Arrangement) -> CharPoly:
    if a.dim < 2:
        raise DimensionTooSmall("a generic section needs dimension >= 2")
    return char_poly(a).truncated()


def betti_and_euler(a: Arrangement, poly: CharPoly | None = None):
    """Betti numbers of the complement and its Euler characteristic chi(A, 1)."""
    poly = char_poly(a) if poly is None else poly
    betti = tuple((-1) ** k * c for k, c in enumerate(poly.coeffs))
    return betti, poly(1)


def isomorphic_by_labels(p: IntersectionPoset, labels_p, q: IntersectionPoset, parents_q) -> bool:
    """Check that ``q`` and ``p`` have the same flats after relabelling.

    Hyperplane ``j`` of ``q``'s arrangement is mapped to the indices of
    ``p`` whose labels appear in ``parents_q[j]``.  Because the order is
    inclusion of index sets, equal index-set families with equal ranks
    give a rank- and order-preserving bijection.
    """
    where = {}
    for i, lab in enumerate(labels_p):
        where.setdefault(lab, []).append(i)
    mapping = []
    for parents in parents_q:
        idx = [i for lab in parents for i in where.get(lab, [])]
        if len(idx) != len(parents):
            return False
        mapping.append(idx)
    image = {}
    for f in q.flats:
        key = tuple(sorted(i for j in f.index_set for i in mapping[j]))
        if key in image:
            return False
        image[key] = f.rank
    mine = {f.index_set: f.rank for f in p.flats}
    return image == mine
