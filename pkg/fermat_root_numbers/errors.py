"""Exceptions and collected check errors shared by every module.

Hard failures raise a subclass of FermatRootNumberError. Batch checks
(parameter validation, table verification) collect CheckError records instead
and hand the whole list back, so a single run reports every problem at once.
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"

from typing import Any, NamedTuple


class CheckError(NamedTuple):
    """One failed check, shaped like a parser error: where, what, and the object."""

    source: dict
    message: str
    entry: Any


class FermatRootNumberError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParams(FermatRootNumberError, ValueError):
    """CurveParams violate one or more admissibility invariants."""

    def __init__(self, errors: list[CheckError]):
        self.errors = errors
        super().__init__("; ".join(e.message for e in errors))


class NonUnit(FermatRootNumberError, ValueError):
    """A residue that must be invertible modulo ell is divisible by ell."""


class ZeroInput(FermatRootNumberError, ValueError):
    """Zero was passed where a nonzero value is required."""


class PrecisionExhausted(FermatRootNumberError):
    """A valuation could not be resolved at the working precision."""

    def __init__(self, message: str, precision: int | None = None):
        self.precision = precision
        super().__init__(message)


class UnresolvedValuation(PrecisionExhausted):
    """The conductor branch needs a valuation that is still PRECISION_EXHAUSTED."""


class InconsistentValuations(FermatRootNumberError, ValueError):
    """A valuation triple that no genuine decomposition can produce."""


class InternalInconsistency(FermatRootNumberError, AssertionError):
    """Two independent computations of the same quantity disagree."""


class ShapeMismatch(FermatRootNumberError, ValueError):
    """Series arithmetic between different moduli or truncations."""


class OutOfRange(FermatRootNumberError, IndexError):
    """Coefficient index outside the truncation."""


class InexactDivision(FermatRootNumberError, ArithmeticError):
    """A division that is not exact in Z/ell^M."""


class BadIndex(FermatRootNumberError, ValueError):
    """An index that must be coprime to ell is not."""


class DegenerateArgument(FermatRootNumberError, ArithmeticError):
    """The argument of a Legendre symbol is not an ell-adic unit."""

    def __init__(self, valuation: int | None, message: str):
        # None stands for an argument that is exactly zero
        self.valuation = valuation
        super().__init__(message)

    @property
    def surplus(self) -> int | None:
        return self.valuation


class MissingJEntry(FermatRootNumberError, KeyError):
    """The J table has no value for the requested (N, f) key."""


class PreconditionViolated(FermatRootNumberError, ValueError):
    """Arguments outside the specialization a verification is defined for."""


class JTableFormatError(FermatRootNumberError, ValueError):
    """A J table file line could not be parsed."""


class ConfigError(FermatRootNumberError, ValueError):
    """A run configuration file is missing, unreadable or malformed."""


class UnfactoredCofactor(FermatRootNumberError, ValueError):
    """Trial division left a composite cofactor that was not split."""
