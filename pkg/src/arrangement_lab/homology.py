"""Twisted homology dimensions under nonresonance and the Hurewicz bookkeeping.

For a nonresonant rank-r local system on the complement M of an essential
arrangement in dimension l, twisted homology is concentrated in degree l
with dimension ``(-1)^l r chi(A, 1)``.  On a generic hyperplane section it
is concentrated in degree l-1 with dimension ``(-1)^(l-1) r chi(A cap U, 1)``.
The top cells of M (there are ``b_l`` of them) carry ``r b_l`` generators
whose boundaries must span the section homology; the certificate checks
that ``r b_l = dim H_l(M) + dim H_(l-1)(M cap U)`` with all three numbers
computed separately.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .arrangement import Arrangement, is_essential
from .errors import CertificateError, DimensionTooSmall, KOutOfRange, NotEssential, Resonant
from .local_system import LocalSystem, ResonanceVerdict, nonresonance_check
from .poset import CharPoly, char_poly

FULL = "full_complement"
SECTION = "generic_section"

LOW_DIM_WARNING = (
    "surjectivity of the twisted Hurewicz map is established for arrangements "
    "with ℓ≥3; for ℓ=2 only the dimension identities are certified"
)
ZERO_EULER_WARNING = (
    "χ(M(A)) = 0: all twisted homology of M(A) vanishes, so the top-cell "
    "generators map isomorphically onto H_(ℓ-1) of the section (image_dim = generators)"
)


@dataclass(frozen=True)
class HomologyReport:
    space: str
    dims: tuple
    rank: int
    euler_used: int

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def to_dict(self) -> dict:
        return {"space": self.space, "dims": list(self.dims), "rank": self.rank,
                "euler_used": self.euler_used}


@dataclass(frozen=True)
class HurewiczCertificate:
    dim: int
    top_cells: int
    generators: int
    kernel_dim: int
    image_dim: int
    surjective: bool
    warnings: tuple = field(default=())

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "top_cells": self.top_cells,
            "generators": self.generators,
            "kernel_dim": self.kernel_dim,
            "image_dim": self.image_dim,
            "surjective": self.surjective,
            "warnings": list(self.warnings),
        }


def _require_essential(a: Arrangement):
    if not is_essential(a):
        raise NotEssential("the vanishing theorem needs an essential arrangement")


def _require_nonresonant(a, l: LocalSystem, verdict: ResonanceVerdict | None):
    verdict = nonresonance_check(a, l) if verdict is None else verdict
    if not verdict.nonresonant:
        raise Resonant(verdict)
    return verdict


def _concentrated(length: int, degree: int, value: int, what: str):
    if value < 0:
        raise CertificateError(f"negative {what} homology dimension {value}")
    dims = [0] * length
    dims[degree] = value
    return tuple(dims)


def homology_dims(a: Arrangement, l: LocalSystem, *, poly: CharPoly | None = None,
                  verdict: ResonanceVerdict | None = None) -> HomologyReport:
    _require_essential(a)
    _require_nonresonant(a, l, verdict)
    poly = char_poly(a) if poly is None else poly
    euler = poly(1)
    value = (-1) ** a.dim * l.rank * euler
    return HomologyReport(FULL, _concentrated(a.dim + 1, a.dim, value, "full"), l.rank, euler)


def section_homology_dims(a: Arrangement, l: LocalSystem, *, poly: CharPoly | None = None,
                          verdict: ResonanceVerdict | None = None) -> HomologyReport:
    _require_essential(a)
    if a.dim < 2:
        raise DimensionTooSmall("a generic section needs dimension >= 2")
    _require_nonresonant(a, l, verdict)
    poly = char_poly(a) if poly is None else poly
    euler = poly.truncated()(1)
    value = (-1) ** (a.dim - 1) * l.rank * euler
    return HomologyReport(SECTION, _concentrated(a.dim, a.dim - 1, value, "section"), l.rank, euler)


def hurewicz_certificate(a: Arrangement, l: LocalSystem) -> HurewiczCertificate:
    _require_essential(a)
    if a.dim < 2:
        raise DimensionTooSmall("the certificate needs dimension >= 2")
    verdict = _require_nonresonant(a, l, None)
    poly = char_poly(a)
    top_cells = (-1) ** a.dim * poly.coeffs[-1]
    generators = l.rank * top_cells
    kernel = homology_dims(a, l, poly=poly, verdict=verdict).dims[a.dim]
    image = section_homology_dims(a, l, poly=poly, verdict=verdict).dims[a.dim - 1]
    if generators != kernel + image:
        raise CertificateError(
            f"dimension count fails: {generators} generators != {kernel} + {image}"
        )
    warnings = []
    if a.dim < 3:
        warnings.append(LOW_DIM_WARNING)
    if poly(1) == 0:
        warnings.append(ZERO_EULER_WARNING)
    return HurewiczCertificate(a.dim, top_cells, generators, kernel, image, True, tuple(warnings))


def euler_positivity(a: Arrangement, poly: CharPoly | None = None):
    """``(-1)^(l-1) chi(M cap U)`` for a generic hyperplane U, and whether it is > 0."""
    _require_essential(a)
    if a.dim < 2:
        raise DimensionTooSmall("a generic section needs dimension >= 2")
    poly = char_poly(a) if poly is None else poly
    value = (-1) ** (a.dim - 1) * poly.truncated()(1)
    return value, value > 0


def homotopy_nonvanishing(a: Arrangement, k: int, poly: CharPoly | None = None):
    """Euler characteristic of a generic k-dimensional section and its sign witness.

    The section polynomial is obtained by applying ``p -> (p - p(0)) / t``
    ``l - k`` times.
    """
    _require_essential(a)
    if not 2 <= k <= a.dim - 1:
        raise KOutOfRange(f"k must satisfy 2 <= k <= {a.dim - 1}, got {k}")
    poly = char_poly(a) if poly is None else poly
    for _ in range(a.dim - k):
        poly = poly.truncated()
    euler = poly(1)
    return euler, (-1) ** k * euler > 0
