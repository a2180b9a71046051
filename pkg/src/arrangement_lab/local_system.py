"""Diagonal local systems given by rational monodromy exponents.

Around hyperplane H, channel j has monodromy eigenvalue
``exp(2 pi i * weights[H][j])``.  The exponent at infinity is minus the sum
of all finite exponents, so "eigenvalue 1" becomes an integrality test on
a rational number.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .arrangement import Arrangement, format_rat, parse_rat
from .at_infinity import cone, dense_edges
from .errors import MalformedInput, RowCountMismatch


@dataclass(frozen=True)
class LocalSystem:
    rank: int
    weights: tuple  # one row per hyperplane, one Fraction per channel

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.weights)
        object.__setattr__(self, "weights", rows)
        if self.rank < 1:
            raise MalformedInput("local system rank must be >= 1")
        for i, row in enumerate(rows):
            if len(row) != self.rank:
                raise MalformedInput(f"weight row {i} has {len(row)} entries, expected {self.rank}")

    @property
    def infinity_weights(self) -> tuple:
        return tuple(-sum((row[j] for row in self.weights), Fraction(0)) for j in range(self.rank))

    def channel(self, j: int) -> "LocalSystem":
        """Rank-1 system of channel ``j`` (1-based)."""
        return LocalSystem(1, tuple((row[j - 1],) for row in self.weights))

    def to_dict(self) -> dict:
        return {"rank": self.rank, "weights": [[format_rat(x) for x in row] for row in self.weights]}

    def dumps(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def uniform(n: int, weight, rank: int = 1) -> LocalSystem:
    w = Fraction(weight)
    return LocalSystem(rank, tuple((w,) * rank for _ in range(n)))


def parse_local_system(text: str, a: Arrangement) -> LocalSystem:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict) or "rank" not in obj or "weights" not in obj:
        raise MalformedInput("expected an object with 'rank' and 'weights'")
    rank = obj["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise MalformedInput(f"'rank' must be a positive integer, got {rank!r}")
    rows = obj["weights"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MalformedInput("'weights' must be a list of lists")
    if len(rows) != len(a):
        raise RowCountMismatch(f"{len(rows)} weight rows for {len(a)} hyperplanes")
    return LocalSystem(rank, tuple(tuple(parse_rat(x) for x in r) for r in rows))


def load_local_system(path, a: Arrangement) -> LocalSystem:
    with open(path) as fh:
        return parse_local_system(fh.read(), a)


def dual(l: LocalSystem) -> LocalSystem:
    return LocalSystem(l.rank, tuple(tuple(-x for x in row) for row in l.weights))


@dataclass(frozen=True)
class Violation:
    edge: tuple  # indices into the projective closure; len(A) is H_inf
    labels: tuple
    channel: int  # 1-based
    value: Fraction

    @property
    def edge_label(self) -> str:
        return "{" + ", ".join(self.labels) + "}"


@dataclass(frozen=True)
class ResonanceVerdict:
    nonresonant: bool
    violations: tuple = ()
    edges_checked: int = 0

    def __bool__(self):
        return self.nonresonant


def nonresonance_check(a: Arrangement, l: LocalSystem, edges=None) -> ResonanceVerdict:
    """Check every dense edge in H_inf and every channel for an integer exponent sum."""
    if len(l.weights) != len(a):
        raise RowCountMismatch(f"{len(l.weights)} weight rows for {len(a)} hyperplanes")
    coned = cone(a)
    edges = dense_edges(a, coned) if edges is None else edges
    at_inf = l.infinity_weights
    violations = []
    checked = 0
    for edge in edges:
        if not edge.dense:
            continue
        checked += 1
        for j in range(l.rank):
            s = sum(
                (at_inf[j] if i == coned.infinity_index else l.weights[i][j] for i in edge.flat_indices),
                Fraction(0),
            )
            if s.denominator == 1:
                labels = tuple(coned.label(i) for i in edge.flat_indices)
                violations.append(Violation(edge.flat_indices, labels, j + 1, s))
    return ResonanceVerdict(not violations, tuple(violations), checked)

