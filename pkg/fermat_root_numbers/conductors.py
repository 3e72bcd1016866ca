"""Conductor exponents of (., a)_{ell^N} and of the Hecke character phi_{delta,pi}.

WHAT IT DOES:
- classify_valuations: the five-way case split of the conductor exponent of
  the norm-residue symbol (., a)_{ell^N}, driven only by ord(b), ord(c) and
  ord(b+c) of the decomposition a = epsilon * ell^b * (1 + c)
- sharifi_conductor: the same split read off a UnitDecomposition
- conductor_phi: the conductor exponent f' of phi_{delta,pi}, which equals f
  on the two ramified branches and 1 otherwise
- first_factor_case: which of the three cases applies to the factor
  (1 + pi^(f-1), ell)_ell, the only ones where f - 1 < f(ell) = ell + 1

BRANCHES (w = min(ord b, ord c)):

    W_ZERO            w = 0                          f = ell^(N-1) (ell + 1)
    RAMIFIED_EQUAL    1 <= w < N, ord(b+c) = w       f = 2 ell^(N-w)
                      w = N = ord c, ord(b+c) = N    f = 2
    RAMIFIED_GREATER  1 <= w < N, ord(b+c) > w       f = ell^(N-w-1) (ell - 1)
    TAME_TWO          w = N = ord c, ord(b+c) > N    f = 2
    TRIVIAL_TAIL      anything else                  f = 0

TAME_TWO keeps Sharifi's f = 2 but, unlike RAMIFIED_EQUAL(N), has no
closed-form symbol value; the root-number pipeline treats it as "otherwise".

ERROR REPORTING:
- InconsistentValuations for triples that violate the ultrametric inequality
  (ord(b+c) < w, or ord b != ord c without ord(b+c) = w)
- UnresolvedValuation when the branch needs ord(b+c) and the decomposition
  only knows it as PRECISION_EXHAUSTED
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"

import enum
import logging
from dataclasses import dataclass

from fermat_root_numbers.errors import InconsistentValuations, UnresolvedValuation
from fermat_root_numbers.padic_core import (
    INFINITY,
    PRECISION_EXHAUSTED,
    Resolution,
    UnitDecomposition,
    Valuation,
)

logger = logging.getLogger(__name__)


class Branch(enum.Enum):
    W_ZERO = "W_ZERO"
    RAMIFIED_EQUAL = "RAMIFIED_EQUAL"
    RAMIFIED_GREATER = "RAMIFIED_GREATER"
    TAME_TWO = "TAME_TWO"
    TRIVIAL_TAIL = "TRIVIAL_TAIL"


RAMIFIED_BRANCHES = frozenset({Branch.RAMIFIED_EQUAL, Branch.RAMIFIED_GREATER})


class FirstFactorCase(enum.Enum):
    """The cases where (1 + pi^(f-1), ell)_ell is not automatically trivial."""

    TOP = "w = N = ord c"
    WILD = "N = w + 1, ord(b+c) > w"
    TAME = "N = 1, w = 0"
    NONE = "f - 1 >= f(ell)"


@dataclass(frozen=True)
class ConductorClassification:
    branch: Branch
    w: Valuation
    f: int

    @property
    def is_ramified(self) -> bool:
        return self.branch in RAMIFIED_BRANCHES

    def __str__(self) -> str:
        if self.is_ramified:
            return f"{self.branch.value}({self.w})"
        return self.branch.value


def _check_ultrametric(
    ord_b: Valuation, ord_c: Valuation, ord_b_plus_c: Valuation | Resolution, w: Valuation
) -> None:
    if ord_b_plus_c is PRECISION_EXHAUSTED:
        return
    if ord_b_plus_c < w:
        raise InconsistentValuations(
            f"ord(b+c)={ord_b_plus_c} is below w={w} (ord_b={ord_b}, ord_c={ord_c})"
        )
    if ord_b != ord_c and ord_b_plus_c != w:
        raise InconsistentValuations(
            f"ord_b={ord_b} and ord_c={ord_c} differ, so ord(b+c) must be {w}, "
            f"got {ord_b_plus_c}"
        )


def _require(ord_b_plus_c: Valuation | Resolution, w: Valuation) -> Valuation:
    if ord_b_plus_c is PRECISION_EXHAUSTED:
        raise UnresolvedValuation(
            f"the branch for w={w} needs ord(b+c), which is unresolved at this precision"
        )
    return ord_b_plus_c


def classify_valuations(
    ord_b: Valuation,
    ord_c: Valuation,
    ord_b_plus_c: Valuation | Resolution,
    ell: int,
    N: int,
) -> ConductorClassification:
    """Conductor exponent of (., a)_{ell^N} from the three valuations of a."""
    w = min(ord_b, ord_c)
    _check_ultrametric(ord_b, ord_c, ord_b_plus_c, w)

    if w == 0:
        return ConductorClassification(Branch.W_ZERO, w, ell ** (N - 1) * (ell + 1))

    if w is not INFINITY and 1 <= w < N:
        if _require(ord_b_plus_c, w) == w:
            return ConductorClassification(Branch.RAMIFIED_EQUAL, w, 2 * ell ** (N - w))
        return ConductorClassification(
            Branch.RAMIFIED_GREATER, w, ell ** (N - w - 1) * (ell - 1)
        )

    if w == N and ord_c == N:
        if _require(ord_b_plus_c, w) == N:
            return ConductorClassification(Branch.RAMIFIED_EQUAL, w, 2)
        return ConductorClassification(Branch.TAME_TWO, w, 2)

    return ConductorClassification(Branch.TRIVIAL_TAIL, w, 0)


def sharifi_conductor(d: UnitDecomposition, N: int) -> ConductorClassification:
    """Classify the conductor of (., a)_{ell^N} for a decomposed a.

    Args:
        d: Decomposition a = epsilon * ell^b * (1 + c)
        N: The level

    Returns:
        ConductorClassification with the branch, w and Sharifi's f
    """
    cls = classify_valuations(d.ord_b, d.ord_c, d.ord_b_plus_c, d.prime, N)
    logger.debug("Classified ell=%d N=%d b=%d as %s, f=%d", d.prime, N, d.b, cls, cls.f)
    return cls


def phi_exponent(cls: ConductorClassification) -> int:
    """f' for a known classification: f on the ramified branches, else 1."""
    return cls.f if cls.is_ramified else 1


def conductor_phi(d: UnitDecomposition, N: int) -> int:
    return phi_exponent(sharifi_conductor(d, N))


def ell_symbol_conductor(ell: int) -> int:
    """Conductor exponent f(ell) of (., ell)_ell."""
    return ell + 1


def first_factor_case(
    cls: ConductorClassification,
    ord_c: Valuation,
    ord_b_plus_c: Valuation | Resolution,
    ell: int,
    N: int,
) -> FirstFactorCase:
    """Which case of (1 + pi^(f-1), ell)_ell applies for a classified decomposition.

    Args:
        cls: Classification of the decomposition, giving w and f
        ord_c: ord(c) of the same decomposition
        ord_b_plus_c: ord(b+c), possibly PRECISION_EXHAUSTED
        ell: The prime
        N: The level

    Returns:
        FirstFactorCase.NONE whenever f - 1 reaches the conductor f(ell) of
        (., ell)_ell, otherwise the case whose valuation pattern matches
    """
    if cls.f - 1 >= ell_symbol_conductor(ell):
        return FirstFactorCase.NONE
    w = cls.w
    if w == N and ord_c == N:
        return FirstFactorCase.TOP
    if (
        w is not INFINITY
        and N == w + 1
        and ord_b_plus_c is not PRECISION_EXHAUSTED
        and ord_b_plus_c > w
    ):
        return FirstFactorCase.WILD
    if N == 1 and w == 0:
        return FirstFactorCase.TAME
    return FirstFactorCase.NONE
