"""Truncated power series over Z/ell^M.

Series are kept modulo X^(T+1) with dense coefficient tuples; T never exceeds
ell + 1 in the residue computations this package performs, so no sparse
representation is needed. Values are immutable and every operation returns a
new series.

Products and powers are computed exactly in sympy's ring ZZ[X] with
ring_series (rs_mul, rs_pow) at precision T + 1, then reduced mod ell^M.
Exponents above EXACT_POWER_LIMIT are split by squaring so that coefficients
are reduced between the exact steps.

Division by an integer is only allowed when it is exact in Z/ell^M: a divisor
coprime to ell is inverted, and a factor ell^e requires every coefficient to
carry valuation >= e, in which case the quotient is known modulo ell^(M-e).
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"

import logging
from dataclasses import dataclass
from typing import Literal, Sequence

from sympy.polys.domains import ZZ
from sympy.polys.ring_series import rs_mul, rs_pow
from sympy.polys.rings import PolyElement, ring

from fermat_root_numbers.errors import InexactDivision, OutOfRange, ShapeMismatch

logger = logging.getLogger(__name__)

EXACT_POWER_LIMIT = 32

_RING, _X = ring("X", ZZ)

SeriesOp = Literal["add", "sub", "mul"]


def _to_ring(coefficients: Sequence[int]) -> PolyElement:
    return _RING.from_dict({(n,): a for n, a in enumerate(coefficients) if a})


def _from_ring(p: PolyElement, truncation: int) -> list[int]:
    out = [0] * (truncation + 1)
    for (n,), a in p.items():
        out[n] = int(a)
    return out


def integer_product(lhs: Sequence[int], rhs: Sequence[int], truncation: int) -> list[int]:
    """Exact product of two integer coefficient lists modulo X^(truncation+1)."""
    product = rs_mul(_to_ring(lhs), _to_ring(rhs), _X, truncation + 1)
    return _from_ring(product, truncation)


@dataclass(frozen=True)
class TruncatedSeries:
    """An element of (Z/ell^M)[X] / (X^(T+1))."""

    prime: int
    precision: int
    truncation: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.truncation + 1:
            raise ShapeMismatch(
                f"expected {self.truncation + 1} coefficients, got {len(self.coefficients)}"
            )
        modulus = self.modulus
        if any(not 0 <= a < modulus for a in self.coefficients):
            raise ValueError(f"coefficients must be reduced modulo {modulus}")

    @classmethod
    def from_coefficients(
        cls, coefficients: Sequence[int], prime: int, precision: int, truncation: int
    ) -> "TruncatedSeries":
        """Build a series from any integers; extra terms are dropped, missing ones are 0."""
        modulus = prime**precision
        padded = list(coefficients[: truncation + 1])
        padded += [0] * (truncation + 1 - len(padded))
        return cls(prime, precision, truncation, tuple(a % modulus for a in padded))

    @classmethod
    def constant(cls, value: int, prime: int, precision: int, truncation: int) -> "TruncatedSeries":
        return cls.from_coefficients([value], prime, precision, truncation)

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    def _like(self, coefficients: Sequence[int]) -> "TruncatedSeries":
        return TruncatedSeries.from_coefficients(
            coefficients, self.prime, self.precision, self.truncation
        )

    def _check_shape(self, other: "TruncatedSeries") -> None:
        if (self.prime, self.precision, self.truncation) != (
            other.prime,
            other.precision,
            other.truncation,
        ):
            raise ShapeMismatch(
                f"cannot combine series mod {self.prime}^{self.precision}, X^{self.truncation + 1} "
                f"with series mod {other.prime}^{other.precision}, X^{other.truncation + 1}"
            )

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_shape(other)
        return self._like([a + b for a, b in zip(self.coefficients, other.coefficients)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_shape(other)
        return self._like([a - b for a, b in zip(self.coefficients, other.coefficients)])

    def __neg__(self) -> "TruncatedSeries":
        return self._like([-a for a in self.coefficients])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_shape(other)
        return self._like(integer_product(self.coefficients, other.coefficients, self.truncation))

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        return series_pow(self, exponent)

    def substitute_scaled(self, a: int) -> "TruncatedSeries":
        """f(aX)."""
        return self._like([coef * a**n for n, coef in enumerate(self.coefficients)])

    def divide_exact(self, k: int) -> "TruncatedSeries":
        """f / k, certified exact; an ell-power in k lowers the precision."""
        if k == 0:
            raise InexactDivision("division by zero")
        e = 0
        while k % self.prime == 0:
            k //= self.prime
            e += 1
        if e >= self.precision:
            raise InexactDivision(
                f"dividing by {self.prime}^{e} leaves no digits mod {self.prime}^{self.precision}"
            )
        shift = self.prime**e
        for n, coef in enumerate(self.coefficients):
            if coef % shift:
                raise InexactDivision(
                    f"coefficient {n} ({coef}) is not divisible by {self.prime}^{e}"
                )
        precision = self.precision - e
        modulus = self.prime**precision
        inverse = pow(k, -1, modulus)
        return TruncatedSeries.from_coefficients(
            [coef // shift * inverse for coef in self.coefficients],
            self.prime,
            precision,
            self.truncation,
        )


def series_arith(lhs: TruncatedSeries, rhs: TruncatedSeries, op: SeriesOp) -> TruncatedSeries:
    """Add, subtract or multiply two series of the same shape.

    Args:
        lhs: Left operand
        rhs: Right operand, with the same prime, precision and truncation
        op: One of "add", "sub" or "mul"

    Returns:
        The result, reduced mod ell^M and truncated after X^T
    """
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown series operation {op!r}")


def series_pow(f: TruncatedSeries, e: int) -> TruncatedSeries:
    """f^e for e >= 0; f^0 is 1 even when f is zero."""
    if e < 0:
        raise ValueError(f"negative exponent {e}")
    if e == 0:
        return TruncatedSeries.constant(1, f.prime, f.precision, f.truncation)
    if e <= EXACT_POWER_LIMIT:
        power = rs_pow(_to_ring(f.coefficients), e, _X, f.truncation + 1)
        return f._like(_from_ring(power, f.truncation))
    half = series_pow(f, e // 2)
    result = half * half
    return result * f if e % 2 else result


def binomial_series(upper: int, prime: int, precision: int, truncation: int) -> TruncatedSeries:
    """(1 + X)^upper for any integer upper, via C(u, k) = C(u, k-1) (u - k + 1) / k."""
    coefficients = [1]
    value = 1
    for k in range(1, truncation + 1):
        value = value * (upper - k + 1) // k
        coefficients.append(value)
    return TruncatedSeries.from_coefficients(coefficients, prime, precision, truncation)


def frobenius_substitute(f: TruncatedSeries) -> TruncatedSeries:
    """f(X^ell): coefficient k of f moves to index k * ell."""
    out = [0] * (f.truncation + 1)
    for k, coef in enumerate(f.coefficients):
        if k * f.prime > f.truncation:
            break
        out[k * f.prime] = coef
    return TruncatedSeries(f.prime, f.precision, f.truncation, tuple(out))


def coeff(f: TruncatedSeries, n: int) -> int:
    """[X^n] f."""
    if not 0 <= n <= f.truncation:
        raise OutOfRange(f"index {n} outside 0..{f.truncation}")
    return f.coefficients[n]
