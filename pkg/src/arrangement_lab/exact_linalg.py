"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries (aliased as
``Rat``).  Elimination is done fraction-free on integer-scaled rows
(Bareiss), and only the final back substitution touches fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Rat = Fraction


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use an int, Fraction or 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class RatMatrix:
    """Dense row-major rational matrix."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(as_rat(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows, cols=None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def __matmul__(self, v):
        return tuple(dot(self.row(i), v) for i in range(self.rows))


@dataclass(frozen=True)
class AffineSolution:
    """Solution set of ``m x = b``: empty, or ``point + span(directions)``."""

    point: tuple | None
    directions: tuple = ()

    @property
    def kind(self) -> str:
        return "empty" if self.point is None else "nonempty"

    @property
    def is_empty(self) -> bool:
        return self.point is None

    @property
    def dim(self) -> int:
        if self.point is None:
            raise ValueError("empty solution set has no dimension")
        return len(self.directions)


def dot(u, v) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def _coerce(m, cols=None):
    """Return (list of Fraction rows, number of columns)."""
    if isinstance(m, RatMatrix):
        return [list(m.row(i)) for i in range(m.rows)], m.cols
    rows = [[as_rat(x) for x in r] for r in m]
    if cols is None:
        if not rows:
            raise ValueError("cols is required for a matrix with no rows")
        cols = len(rows[0])
    if any(len(r) != cols for r in rows):
        raise ValueError("ragged rows")
    return rows, cols


def integer_row(row) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    den = lcm(*(x.denominator for x in row)) if row else 1
    return [x.numerator * (den // x.denominator) for x in row]


def primitive(vec) -> tuple:
    """Integer multiple of ``vec`` with content 1 and positive leading entry."""
    ints = integer_row([as_rat(x) for x in vec])
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(Fraction(0) for _ in ints)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


def bareiss_echelon(rows: list[list[int]], ncols: int):
    """Fraction-free row echelon form of an integer matrix.

    Returns ``(echelon_rows, pivot_columns)``.  The input list is not
    modified.  Every intermediate entry is a minor of the input, so the
    integer divisions below are exact.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nr:
            break
        p = r
        while p < nr and m[p][c] == 0:
            p += 1
        if p == nr:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        row_r = m[r]
        piv = row_r[c]
        for i in range(r + 1, nr):
            row_i = m[i]
            f = row_i[c]
            if f == 0:
                if prev != piv:
                    for j in range(c + 1, ncols):
                        row_i[j] = (piv * row_i[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
                row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots


def _rref(rows: list[list[Fraction]], ncols: int):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    ech, pivots = bareiss_echelon([integer_row(r) for r in rows], ncols)
    red = [[Fraction(x) for x in ech[i]] for i in range(len(pivots))]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        row = red[i]
        piv = row[c]
        if piv != 1:
            row[:] = [x / piv for x in row]
        for k in range(i):
            f = red[k][c]
            if f:
                other = red[k]
                for j in range(c, ncols):
                    if row[j]:
                        other[j] -= f * row[j]
    return red, pivots


def rank(m, cols=None) -> int:
    rows, ncols = _coerce(m, cols)
    if not rows or ncols == 0:
        return 0
    _, pivots = bareiss_echelon([integer_row(r) for r in rows], ncols)
    return len(pivots)


def _null_from_rref(red, pivots, ncols):
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(primitive(v))
    return basis


def nullspace(m, cols=None) -> list[tuple]:
    """Canonical basis of the right null space.

    One vector per free column (in column order), each scaled to integer
    entries with content 1 and a positive leading entry.
    """
    rows, ncols = _coerce(m, cols)
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = _rref(rows, ncols)
    return _null_from_rref(red, pivots, ncols)


def solve_affine(m, b: Sequence, cols=None) -> AffineSolution:
    """Solve ``m x = b`` exactly.

    The particular point sets all free variables to zero; the direction
    basis is :func:`nullspace` of ``m``.
    """
    rows, ncols = _coerce(m, cols)
    b = [as_rat(x) for x in b]
    if len(b) != len(rows):
        raise ValueError(f"right-hand side has length {len(b)}, expected {len(rows)}")
    if not rows:
        return AffineSolution(tuple(Fraction(0) for _ in range(ncols)), tuple(nullspace([], ncols)))
    aug = [r + [bi] for r, bi in zip(rows, b)]
    red, pivots = _rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return AffineSolution(None, ())
    point = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        point[c] = red[i][ncols]
    directions = _null_from_rref([r[:ncols] for r in red], pivots, ncols)
    return AffineSolution(tuple(point), tuple(directions))
