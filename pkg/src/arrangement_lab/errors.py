"""Exception hierarchy.

Two families matter to callers: :class:`InputError` for malformed files
(CLI exit code 1) and :class:`DomainError` for well-formed inputs that
violate a mathematical precondition (CLI exit code 2).
"""


class ArrangementLabError(Exception):
    """Base class for all library errors."""


class InputError(ArrangementLabError, ValueError):
    pass


class MalformedInput(InputError):
    pass


class ZeroNormal(InputError):
    pass


class DuplicateHyperplane(InputError):
    def __init__(self, first, second):
        self.indices = (first, second)
        super().__init__(
            f"hyperplanes {first} and {second} define the same affine hyperplane"
        )


class RowCountMismatch(InputError):
    pass


class DomainError(ArrangementLabError):
    pass


class IndexOutOfRange(DomainError, IndexError):
    pass


class DimensionMismatch(DomainError):
    pass


class DimensionTooSmall(DomainError):
    pass


class NotEssential(DomainError):
    pass


class NotGeneric(DomainError):
    def __init__(self, flat):
        self.flat = flat
        super().__init__(f"hyperplane is not generic: violated at flat {flat.index_set}")


class RetryLimitExceeded(DomainError):
    pass


class OracleTooLarge(DomainError):
    pass


class TooLarge(DomainError):
    pass


class ZeroVector(DomainError):
    pass


class KOutOfRange(DomainError):
    pass


class Resonant(DomainError):
    def __init__(self, verdict):
        self.verdict = verdict
        parts = [f"{v.edge_label} (channel {v.channel}, sum {v.value})" for v in verdict.violations]
        super().__init__("local system is resonant at " + "; ".join(parts))


class CertificateError(ArrangementLabError, AssertionError):
    """An identity that must hold by construction failed (a library bug)."""
