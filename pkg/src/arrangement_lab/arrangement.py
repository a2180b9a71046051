"""Affine hyperplane arrangements over the rationals.

A hyperplane is stored as ``normal . x = offset``.  The order of
hyperplanes in an :class:`Arrangement` is the index order used by every
other module (poset index sets, circuits, local-system rows).
"""
from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact_linalg as la
from .errors import (
    DimensionMismatch,
    DimensionTooSmall,
    DuplicateHyperplane,
    IndexOutOfRange,
    MalformedInput,
    NotGeneric,
    RetryLimitExceeded,
    ZeroNormal,
)

_RAT_RE = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")


def parse_rat(value) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction."""
    if isinstance(value, bool):
        raise MalformedInput(f"bad rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not _RAT_RE.match(value):
        raise MalformedInput(f"bad rational: {value!r}")
    num, _, den = value.replace(" ", "").partition("/")
    if den and int(den) == 0:
        raise MalformedInput(f"zero denominator in {value!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple
    offset: Fraction = Fraction(0)
    label: str = ""
    parents: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(la.as_rat(x) for x in self.normal))
        object.__setattr__(self, "offset", la.as_rat(self.offset))
        object.__setattr__(self, "parents", tuple(self.parents))
        if not any(self.normal):
            raise ZeroNormal(f"hyperplane {self.label or '?'} has zero normal")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def evaluate(self, x) -> Fraction:
        return la.dot(self.normal, x) - self.offset

    def key(self) -> tuple:
        """Scale-invariant identity of the affine hyperplane."""
        return la.primitive(self.normal + (self.offset,))

    def __str__(self):
        terms = " ".join(format_rat(c) for c in self.normal)
        return f"{self.label}: [{terms}] . x = {format_rat(self.offset)}"


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "hyperplanes", tuple(self.hyperplanes))
        if self.dim < 0:
            raise DimensionMismatch("negative dimension")
        seen = {}
        for i, h in enumerate(self.hyperplanes):
            if h.dim != self.dim:
                raise DimensionMismatch(
                    f"hyperplane {i} has normal of length {h.dim}, expected {self.dim}"
                )
            k = h.key()
            if k in seen:
                raise DuplicateHyperplane(seen[k], i)
            seen[k] = i

    @classmethod
    def from_rows(cls, rows, labels=None, dim=None) -> "Arrangement":
        """Build from rows ``(a_1, ..., a_l, c)`` meaning ``a . x = c``."""
        rows = [list(r) for r in rows]
        if dim is None:
            if not rows:
                raise ValueError("dim is required for an empty arrangement")
            dim = len(rows[0]) - 1
        labels = labels or [f"H{i + 1}" for i in range(len(rows))]
        return cls(dim, tuple(Hyperplane(tuple(r[:-1]), r[-1], lab) for r, lab in zip(rows, labels)))

    def __len__(self):
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def __getitem__(self, i):
        return self.hyperplanes[i]

    @property
    def normals(self) -> list:
        return [h.normal for h in self.hyperplanes]

    @property
    def offsets(self) -> list:
        return [h.offset for h in self.hyperplanes]

    @property
    def labels(self) -> list:
        return [h.label for h in self.hyperplanes]

    def subarrangement(self, indices) -> "Arrangement":
        return Arrangement(self.dim, tuple(self.hyperplanes[i] for i in indices))

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "hyperplanes": [
                {
                    "normal": [format_rat(c) for c in h.normal],
                    "offset": format_rat(h.offset),
                    "label": h.label,
                }
                for h in self.hyperplanes
            ],
        }

    def dumps(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def from_dict(obj) -> Arrangement:
    if not isinstance(obj, dict) or "dim" not in obj or "hyperplanes" not in obj:
        raise MalformedInput("expected an object with 'dim' and 'hyperplanes'")
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise MalformedInput(f"'dim' must be a positive integer, got {dim!r}")
    if not isinstance(obj["hyperplanes"], list):
        raise MalformedInput("'hyperplanes' must be a list")
    hyperplanes = []
    for i, entry in enumerate(obj["hyperplanes"]):
        if not isinstance(entry, dict) or "normal" not in entry:
            raise MalformedInput(f"hyperplane {i}: expected an object with 'normal'")
        normal = entry["normal"]
        if not isinstance(normal, list) or len(normal) != dim:
            raise MalformedInput(f"hyperplane {i}: normal must be a list of length {dim}")
        label = entry.get("label") or f"H{i + 1}"
        if not isinstance(label, str):
            raise MalformedInput(f"hyperplane {i}: label must be a string")
        hyperplanes.append(
            Hyperplane(
                tuple(parse_rat(c) for c in normal),
                parse_rat(entry.get("offset", "0")),
                label,
            )
        )
    return Arrangement(dim, tuple(hyperplanes))


def parse(text: str) -> Arrangement:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not valid JSON: {exc}") from None
    return from_dict(obj)


def load(path) -> Arrangement:
    with open(path) as fh:
        return parse(fh.read())


def is_essential(a: Arrangement) -> bool:
    if a.dim == 0:
        return True
    if not a.hyperplanes:
        return False
    return la.rank(a.normals) == a.dim


def _restrict_to(a_hyperplanes, point, directions, dim):
    """Traces of hyperplanes on the affine subspace point + span(directions).

    Returns (trace hyperplane or None, ...) in input order; None marks a
    hyperplane parallel to the subspace (containing or missing it).
    """
    out = []
    for h in a_hyperplanes:
        normal = tuple(la.dot(h.normal, d) for d in directions)
        offset = h.offset - la.dot(h.normal, point)
        if not any(normal):
            out.append(None)
        else:
            out.append((normal, offset))
    return out


def _parametrize(h: Hyperplane):
    sol = la.solve_affine([list(h.normal)], [h.offset])
    return sol.point, sol.directions


def delete_restrict(a: Arrangement, h: int):
    """Deletion ``A' = A - {H}`` and restriction ``A'' = A' cap H``.

    ``A''`` is expressed in the intrinsic coordinates of ``H`` given by
    :func:`exact_linalg.solve_affine`.  Coincident traces are merged (their
    parent labels are kept on the trace) and hyperplanes parallel to ``H``
    are dropped.
    """
    if not 0 <= h < len(a):
        raise IndexOutOfRange(f"hyperplane index {h} out of range for {len(a)} hyperplanes")
    target = a[h]
    rest = [x for i, x in enumerate(a.hyperplanes) if i != h]
    deletion = Arrangement(a.dim, tuple(rest))

    point, directions = _parametrize(target)
    traces = {}
    order = []
    for parent, tr in zip(rest, _restrict_to(rest, point, directions, a.dim - 1)):
        if tr is None:
            continue
        k = la.primitive(tr[0] + (tr[1],))
        if k not in traces:
            traces[k] = [tr, [parent.label]]
            order.append(k)
        else:
            traces[k][1].append(parent.label)
    restricted = tuple(
        Hyperplane(traces[k][0][0], traces[k][0][1], "|".join(traces[k][1]), traces[k][1])
        for k in order
    )
    return deletion, Arrangement(a.dim - 1, restricted)


@dataclass(frozen=True)
class GenericityVerdict:
    generic: bool
    violation: object = None  # the first violating Flat, if any

    def __bool__(self):
        return self.generic


def is_generic(a: Arrangement, u: Hyperplane, poset=None) -> GenericityVerdict:
    """Check that ``u`` is transversal to every flat of ``a``.

    Positive-dimensional flats must meet ``u`` in codimension one without
    lying inside it; points must avoid ``u``.  Flats are scanned in
    canonical order, so the reported violation is the first one.
    """
    if u.dim != a.dim:
        raise DimensionMismatch(f"hyperplane lives in dim {u.dim}, arrangement in dim {a.dim}")
    if a.dim < 2:
        raise DimensionTooSmall("genericity needs dimension >= 2")
    if poset is None:
        from .poset import build
        poset = build(a)
    for flat in poset.flats:
        w = flat.witness
        if w.directions:
            if not any(la.dot(u.normal, d) for d in w.directions):
                return GenericityVerdict(False, flat)
        elif u.evaluate(w.point) == 0:
            return GenericityVerdict(False, flat)
    return GenericityVerdict(True)


def random_generic_hyperplane(a: Arrangement, seed: int = 0, max_attempts: int = 64,
                              poset=None) -> Hyperplane:
    """Seeded search for a generic hyperplane.

    Coefficients are drawn uniformly from ``[-w, w]``; the window ``w``
    starts at 4 and doubles after every rejected draw.
    """
    if a.dim < 2:
        raise DimensionTooSmall("genericity needs dimension >= 2")
    if poset is None:
        from .poset import build
        poset = build(a)
    rng = random.Random(seed)
    window = 4
    for _ in range(max_attempts):
        normal = [rng.randint(-window, window) for _ in range(a.dim)]
        offset = rng.randint(-window, window)
        window *= 2
        if not any(normal):
            continue
        u = Hyperplane(tuple(normal), offset, "U")
        if is_generic(a, u, poset):
            return u
    raise RetryLimitExceeded(f"no generic hyperplane found in {max_attempts} attempts")


def section(a: Arrangement, u: Hyperplane, poset=None) -> Arrangement:
    """``A cap U`` in the intrinsic coordinates of ``U``; one trace per hyperplane."""
    verdict = is_generic(a, u, poset)
    if not verdict:
        raise NotGeneric(verdict.violation)
    point, directions = _parametrize(u)
    traces = _restrict_to(a.hyperplanes, point, directions, a.dim - 1)
    return Arrangement(
        a.dim - 1,
        tuple(Hyperplane(n, c, h.label, (h.label,)) for h, (n, c) in zip(a.hyperplanes, traces)),
    )


def boolean(dim: int) -> Arrangement:
    """Coordinate hyperplanes x_i = 0."""
    rows = [[int(i == j) for j in range(dim)] + [0] for i in range(dim)]
    return Arrangement.from_rows(rows, [f"x{i + 1}" for i in range(dim)], dim=dim)


def random_arrangement(rng: random.Random, dim: int, n: int, coef: int = 3,
                       essential: bool = False, max_tries: int = 1000) -> Arrangement:
    """Random arrangement with integer coefficients in ``[-coef, coef]``."""
    for _ in range(max_tries):
        hyperplanes, keys = [], set()
        while len(hyperplanes) < n:
            normal = [rng.randint(-coef, coef) for _ in range(dim)]
            if not any(normal):
                continue
            h = Hyperplane(tuple(normal), rng.randint(-coef, coef), f"H{len(hyperplanes) + 1}")
            if h.key() in keys:
                continue
            keys.add(h.key())
            hyperplanes.append(h)
        a = Arrangement(dim, tuple(hyperplanes))
        if not essential or is_essential(a):
            return a
    raise RetryLimitExceeded("could not draw an essential arrangement")
