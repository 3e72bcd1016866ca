"""Wild Hilbert symbol computations over Q_ell(zeta_{ell^N}).

The symbol (1 + pi^(f-1), a)_{ell^N} splits into a factor against ell, which
is governed by the residues c_ell(i), and a factor against 1 + c, whose
exponent is an explicit ell-adic expression weighted by J(N, f).

WHAT IT DOES:
- difference_sum: sum_{r=0..n} (-1)^r C(n, r) f(r) for an integer polynomial
- c_ell_coeff: the double binomial sum c_ell(i) mod ell, with j(i) = i^-1 mod
  ell^N and the inner C(., ell) taken by Lucas' theorem
- c_ell_series_route: the same residue as [X^ell] of a truncated-series
  product, used as an independent oracle
- c_ell_total / c_ell_class_sums: sums over all units and per class mod ell
- vostokov_check: builds eps(X) over Z/ell^2 and compares [X^ell] eps^ell
  with ell * c_ell, reporting the per-k contributions of the binomial
  expansion of eps^ell
- unit_symbol_exponent: (1-f) (2c/ell) J sum_k (-1)^(k+1) c^(k-1)/k mod ell^N
- symbol_with_a: the closed-form zeta_ell exponent of (1 + pi^(f-1), a) on
  the two ramified branches

BRANCH CONVENTIONS:
sign is -1 iff w = N and e is 2 iff w = N - 1. The sign only enters the
ord(b+c) = w branch and e only the ord(b+c) > w branch; branch_multiplier
returns whichever applies, and (1 - f) is congruent to it mod ell.

STRICT AND LENIENT:
The product (2 c e / ell^N) J must be an ell-adic unit. symbol_with_a raises
DegenerateArgument carrying the product's valuation when it is not; with
lenient=True it logs the valuation and uses the unit part instead.
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from fermat_root_numbers.conductors import Branch, ConductorClassification
from fermat_root_numbers.errors import (
    BadIndex,
    DegenerateArgument,
    InexactDivision,
    InternalInconsistency,
    PreconditionViolated,
)
from fermat_root_numbers.jtable import JTable
from fermat_root_numbers.padic_core import (
    INFINITY,
    PadicScalar,
    UnitDecomposition,
    binom_mod_ell,
    ord_ell,
)
from fermat_root_numbers.series_engine import (
    TruncatedSeries,
    binomial_series,
    coeff,
    frobenius_substitute,
    integer_product,
    series_pow,
)

logger = logging.getLogger(__name__)


def difference_sum(coefficients: Sequence[int], n: int) -> int:
    """sum_{r=0..n} (-1)^r C(n, r) f(r) where f(x) = sum_k coefficients[k] x^k."""

    def f(x: int) -> int:
        return sum(a * x**k for k, a in enumerate(coefficients))

    return sum((-1) ** r * comb(n, r) * f(r) for r in range(n + 1))


# ---------------------------------------------------------------------------
# c_ell(i)
# ---------------------------------------------------------------------------


def _inverse_representative(i: int, ell: int, N: int, representative: int | None) -> int:
    if i % ell == 0:
        raise BadIndex(f"index {i} is divisible by {ell}")
    if N < 2:
        raise PreconditionViolated(f"c_ell needs N >= 2, got N={N}")
    modulus = ell**N
    if representative is None:
        return pow(i, -1, modulus)
    if representative * i % modulus != 1:
        raise BadIndex(f"{representative} is not an inverse of {i} mod {modulus}")
    return representative


def _c_ell_terms(j: int, ell: int, N: int):
    t = ell - 2
    shift = ell**N - 1
    for r in range(t + 1):
        for s in range(t + 1):
            yield (-1) ** r * comb(t, r) * comb(t, s), j * (r + s * shift)


def c_ell_coeff(i: int, ell: int, N: int, representative: int | None = None) -> int:
    """c_ell(i) mod ell; representative overrides j(i) with any inverse of i mod ell^N."""
    j = _inverse_representative(i, ell, N, representative)
    total = sum(weight * binom_mod_ell(upper, ell, ell) for weight, upper in _c_ell_terms(j, ell, N))
    return total % ell


def c_ell_exact(i: int, ell: int, N: int, representative: int | None = None) -> int:
    """The same double sum with exact binomials, before reduction."""
    j = _inverse_representative(i, ell, N, representative)
    return sum(weight * comb(upper, ell) for weight, upper in _c_ell_terms(j, ell, N))


def c_ell_series_route(i: int, ell: int, N: int) -> int:
    """[X^ell] (1 + (1+X)^(j(ell^N-1)))^t (1 - (1+X)^j)^t over Z/ell."""
    j = _inverse_representative(i, ell, N, None)
    t = ell - 2
    one = TruncatedSeries.constant(1, ell, 1, ell)
    d = one + binomial_series(j * (ell**N - 1), ell, 1, ell)
    e = one - binomial_series(j, ell, 1, ell)
    return coeff(series_pow(d, t) * series_pow(e, t), ell)


def _units(ell: int, N: int) -> range:
    return range(1, ell**N)


def c_ell_total(ell: int, N: int) -> int:
    """Sum of c_ell(i) over the units i mod ell^N, reduced mod ell.

    The Lucas residues are summed alongside the exact double sums. A
    disagreement between the two totals raises InternalInconsistency.

    Args:
        ell: An odd prime
        N: The level, at least 2

    Returns:
        The total as an integer in 0..ell-1
    """
    units = [i for i in _units(ell, N) if i % ell]
    total = sum(c_ell_coeff(i, ell, N) for i in units) % ell
    exact = sum(c_ell_exact(i, ell, N) for i in units) % ell
    if total != exact:
        raise InternalInconsistency(
            f"sum of c_ell(i) for ell={ell} N={N} is {total} by Lucas but {exact} exactly"
        )
    return total


def c_ell_class_sums(ell: int, N: int) -> dict[int, int]:
    """sum of c_ell(i) over i == a mod ell, for each unit class a."""
    sums = dict.fromkeys(range(1, ell), 0)
    for i in _units(ell, N):
        if i % ell:
            sums[i % ell] += c_ell_coeff(i, ell, N)
    return {a: s % ell for a, s in sums.items()}


# ---------------------------------------------------------------------------
# Residue cross-check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VostokovReport:
    j: int
    ell: int
    N: int
    a_ell: int
    frobenius_coeff: int
    ell_c: int
    low_order_vanishes: bool
    residue_quotient: int
    corrections: dict[int, int] = field(default_factory=dict)

    @property
    def match(self) -> bool:
        return self.a_ell == self.ell_c

    @property
    def frobenius_vanishes(self) -> bool:
        return self.frobenius_coeff == 0

    @property
    def residue_numerator(self) -> int:
        """[X^ell] (eps^ell - eps^Delta) mod ell^2."""
        return (self.a_ell - self.frobenius_coeff) % self.ell**2

    @property
    def quotient_match(self) -> bool:
        """The certified residue quotient equals c_ell mod ell."""
        return self.residue_quotient == self.ell_c // self.ell


def _epsilon(j: int, ell: int, N: int) -> TruncatedSeries:
    """1 + ((1-X)^j - 1)^t (1 + (1-X)^(j(ell^N-1)))^t over Z/ell^2, mod X^(ell+2)."""
    t = ell - 2
    T = ell + 1
    one = TruncatedSeries.constant(1, ell, 2, T)
    a = binomial_series(j, ell, 2, T).substitute_scaled(-1) - one
    b = one + binomial_series(j * (ell**N - 1), ell, 2, T).substitute_scaled(-1)
    return one + series_pow(a, t) * series_pow(b, t)


def _centred(coefficients: Sequence[int], modulus: int) -> list[int]:
    half = modulus // 2
    return [a - modulus if a > half else a for a in coefficients]


def vostokov_check(j: int, ell: int, N: int) -> VostokovReport:
    """Compare [X^ell] eps(X)^ell with ell * c_ell for the unit index j.

    eps^ell and eps(X^ell) agree mod ell coefficientwise, so their difference
    is divided by ell with divide_exact; [X^ell] of the quotient is the
    residue mod ell and is reported as residue_quotient.

    Args:
        j: Exponent in eps(X), coprime to ell; c_ell is taken at i = j^-1
        ell: An odd prime
        N: The level, at least 2

    Returns:
        VostokovReport with both coefficients mod ell^2, the residue quotient
        and the exact per-k corrections C(ell, k) [X^ell] C(X)^k
    """
    if j % ell == 0:
        raise BadIndex(f"index {j} is divisible by {ell}")
    if N < 2:
        raise PreconditionViolated(f"vostokov_check needs N >= 2, got N={N}")
    square = ell**2
    eps = _epsilon(j, ell, N)
    eps_ell = series_pow(eps, ell)
    eps_frobenius = frobenius_substitute(eps)
    a_ell = coeff(eps_ell, ell)
    frobenius_coeff = coeff(eps_frobenius, ell)
    residue_quotient = coeff((eps_ell - eps_frobenius).divide_exact(ell), ell)

    inverse = pow(j, -1, ell**N)
    ell_c = ell * c_ell_coeff(inverse, ell, N, representative=j) % square

    c_poly = _centred(eps.coefficients, square)
    c_poly[0] = 0
    low_order_vanishes = all(c_poly[n] % square == 0 for n in range(ell - 2))

    corrections = {}
    power = [1] + [0] * ell
    for k in range(1, ell + 1):
        power = integer_product(power, c_poly, ell)
        corrections[k] = comb(ell, k) * power[ell]

    report = VostokovReport(
        j=j,
        ell=ell,
        N=N,
        a_ell=a_ell,
        frobenius_coeff=frobenius_coeff,
        ell_c=ell_c,
        low_order_vanishes=low_order_vanishes,
        residue_quotient=residue_quotient,
        corrections=corrections,
    )
    if not report.match:
        logger.debug(
            "Residue mismatch at ell=%d N=%d j=%d: a_ell=%d, ell*c_ell=%d",
            ell, N, j, a_ell, ell_c,
        )
    return report


# ---------------------------------------------------------------------------
# Symbol exponents against 1 + c
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymbolExponent:
    """k in zeta_{ell^N}^k."""

    value: int
    ell: int
    N: int

    def __post_init__(self):
        if not 0 <= self.value < self.ell**self.N:
            raise ValueError(f"exponent {self.value} not reduced mod {self.ell}^{self.N}")

    def to_zeta_ell(self) -> int:
        """The exponent as a power of zeta_ell; needs ell^(N-1) | value."""
        step = self.ell ** (self.N - 1)
        if self.value % step:
            raise InexactDivision(
                f"exponent {self.value} is not a multiple of {self.ell}^{self.N - 1}"
            )
        return self.value // step


def _reduce(x: Fraction, ell: int, N: int) -> int:
    modulus = ell**N
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def unit_symbol_exponent(
    c: PadicScalar, f: int, J: PadicScalar, ell: int, N: int
) -> SymbolExponent:
    """[1 + pi^(f-1), 1 + c] as an exponent of zeta_{ell^N}."""
    if c.is_zero or c.valuation < 1:
        raise PreconditionViolated(f"c must have positive valuation, got {c.valuation}")
    if J.is_zero:
        return SymbolExponent(0, ell, N)

    x = c.to_fraction()
    log_series = sum(Fraction((-1) ** (k + 1)) * x ** (k - 1) / k for k in range(1, N + 1))
    total = (1 - f) * Fraction(2) * x / ell * J.to_fraction() * log_series
    if total == 0:
        return SymbolExponent(0, ell, N)
    valuation = ord_ell(total, ell)
    if valuation < 0:
        raise InexactDivision(
            f"symbol exponent has valuation {valuation}, not integral mod {ell}^{N}"
        )
    return SymbolExponent(_reduce(total, ell, N), ell, N)


def branch_sign_and_e(w: int, N: int) -> tuple[int, int]:
    sign = -1 if w == N else 1
    e = 2 if w == N - 1 else 1
    return sign, e


def branch_multiplier(cls: ConductorClassification, N: int) -> int:
    """sign on the ord(b+c) = w branch, e on the ord(b+c) > w branch."""
    sign, e = branch_sign_and_e(cls.w, N)
    if cls.branch is Branch.RAMIFIED_EQUAL:
        return sign
    if cls.branch is Branch.RAMIFIED_GREATER:
        return e
    raise PreconditionViolated(f"branch {cls} has no closed-form symbol value")


def argument_unit(
    d: UnitDecomposition,
    cls: ConductorClassification,
    jt: JTable,
    N: int,
    lenient: bool = False,
) -> int:
    """(c / ell^N) J mod ell, checked to be a unit (or its unit part when lenient)."""
    if not cls.is_ramified:
        raise PreconditionViolated(f"branch {cls} has no closed-form symbol value")
    entry = jt.get(N, cls.f)
    if d.ord_c is INFINITY:
        raise DegenerateArgument(None, "c is zero, so the symbol argument vanishes")
    valuation = d.ord_c - N + entry.valuation
    if valuation != 0:
        message = (
            f"(2ce/{d.prime}^{N}) J(N={N}, f={cls.f}) has valuation {valuation} "
            f"(ord c={d.ord_c}, J valuation={entry.valuation})"
        )
        if not lenient:
            raise DegenerateArgument(valuation, message)
        logger.info("%s; using the unit part", message)
    return d.c_unit_mod_ell() * entry.unit % d.prime


def symbol_with_a(
    d: UnitDecomposition,
    cls: ConductorClassification,
    jt: JTable,
    N: int,
    lenient: bool = False,
) -> int:
    """Exponent k with (1 + pi^(f-1), a)_{ell^N} = zeta_ell^k."""
    ell = d.prime
    unit = argument_unit(d, cls, jt, N, lenient=lenient)
    return 2 * branch_multiplier(cls, N) * unit % ell
