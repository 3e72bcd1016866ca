"""Exact ell-adic arithmetic for the twisted Fermat quotient root numbers.

Everything downstream works with ell-adic quantities that are known exactly:
valuations of rationals, unit parts truncated to M ell-adic digits, and the
decomposition a = epsilon * ell^b * (1 + c) with epsilon a Teichmuller unit.

WHAT IT DOES:
- ord_ell: exponent of ell in an exact integer or rational (INFINITY for zero)
- teichmuller: the (ell-1)-st root of unity congruent to a unit, by Frobenius
  iteration x -> x^ell mod ell^M
- decompose / value_of_a: the (epsilon, b, c) decomposition with the
  valuations ord(b), ord(c), ord(b+c) and w = min(ord(b), ord(c)); value_of_a
  never builds r^r s^s (ell^N - t)^t delta^(r+s) as an integer
- legendre, binom_mod_ell: Legendre symbols and Lucas-theorem binomials mod ell
- CurveParams: the admissible input tuple (ell, N, r, s, t, delta)

PRECISION POLICY:
The default working precision is M = 2N + 8 digits. A valuation that cannot be
resolved at M is never replaced by a lower bound: decompose raises
PrecisionExhausted (or marks ord(b+c) as PRECISION_EXHAUSTED) and the caller
retries with a larger M.
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from numbers import Rational

from sympy import factorint, isprime, legendre_symbol

from fermat_root_numbers.errors import (
    CheckError,
    InternalInconsistency,
    InvalidParams,
    NonUnit,
    PrecisionExhausted,
    UnfactoredCofactor,
    ZeroInput,
)

logger = logging.getLogger(__name__)

# Extra digits carried while multiplying the unit part of a
GUARD_DIGITS = 2
TRIAL_DIVISION_LIMIT = 10**6


class Infinity(enum.Enum):
    """Valuation of zero. Compares greater than every integer."""

    INFINITY = "inf"

    def __lt__(self, other):
        if isinstance(other, (int, Infinity)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, Infinity):
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, Infinity):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, Infinity)):
            return True
        return NotImplemented

    def __str__(self) -> str:
        return "inf"


class Resolution(enum.Enum):
    """Marks a valuation that the working precision could not pin down."""

    PRECISION_EXHAUSTED = "precision-exhausted"

    def __str__(self) -> str:
        return self.value


INFINITY = Infinity.INFINITY
PRECISION_EXHAUSTED = Resolution.PRECISION_EXHAUSTED

Valuation = int | Infinity


def default_precision(N: int) -> int:
    """Working precision M = 2N + 8 used when none is given."""
    return 2 * N + 8


def _int_ord(n: int, ell: int) -> int:
    n = abs(n)
    k = 0
    while n % ell == 0:
        n //= ell
        k += 1
    return k


def ord_ell(x: int | Rational, ell: int) -> Valuation:
    """Exponent of ell in x; numerator minus denominator valuation for rationals."""
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return _int_ord(x.numerator, ell) - _int_ord(x.denominator, ell)


def unit_residue(x: int | Rational, ell: int, M: int) -> int:
    """Residue of x / ell^ord(x) modulo ell^M."""
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("unit part of zero is undefined")
    modulus = ell**M
    num = x.numerator // ell ** _int_ord(x.numerator, ell)
    den = x.denominator // ell ** _int_ord(x.denominator, ell)
    return num * pow(den, -1, modulus) % modulus


@dataclass(frozen=True)
class PadicScalar:
    """An element of Q_ell known to M digits: ell^valuation * unit."""

    prime: int
    precision: int
    valuation: Valuation
    unit: int

    def __post_init__(self):
        modulus = self.prime**self.precision
        if not 0 <= self.unit < modulus:
            raise ValueError(f"unit {self.unit} not reduced modulo {modulus}")
        if self.valuation is INFINITY:
            if self.unit != 0:
                raise ValueError("zero must carry unit 0")
        elif self.unit % self.prime == 0:
            raise NonUnit(f"unit {self.unit} is divisible by {self.prime}")

    @classmethod
    def from_rational(cls, x: int | Rational, ell: int, M: int) -> "PadicScalar":
        if Fraction(x) == 0:
            return cls.zero(ell, M)
        return cls(ell, M, ord_ell(x, ell), unit_residue(x, ell, M))

    @classmethod
    def zero(cls, ell: int, M: int) -> "PadicScalar":
        return cls(ell, M, INFINITY, 0)

    @property
    def is_zero(self) -> bool:
        return self.valuation is INFINITY

    def to_fraction(self) -> Fraction:
        """A rational congruent to self modulo ell^(valuation + precision)."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.prime) ** self.valuation * self.unit

    def unit_mod_ell(self) -> int:
        return self.unit % self.prime


@dataclass(frozen=True)
class UnitDecomposition:
    """a = epsilon * ell^b * (1 + c) with epsilon in mu_(ell-1) and c in ell*Z_ell."""

    prime: int
    precision: int
    epsilon: int
    b: int
    c: int
    ord_c: Valuation
    ord_b: Valuation
    ord_b_plus_c: Valuation | Resolution
    w: Valuation

    def __post_init__(self):
        modulus = self.prime**self.precision
        if pow(self.epsilon, self.prime - 1, modulus) != 1:
            raise InternalInconsistency(
                f"epsilon={self.epsilon} is not an (ell-1)-st root of unity mod {modulus}"
            )
        if self.c % self.prime != 0:
            raise InternalInconsistency(f"c={self.c} is not divisible by {self.prime}")
        if self.w != min(self.ord_b, self.ord_c):
            raise InternalInconsistency(f"w={self.w} != min(ord_b, ord_c)")

    @property
    def modulus(self) -> int:
        return self.prime**self.precision

    @property
    def resolved(self) -> bool:
        return self.ord_b_plus_c is not PRECISION_EXHAUSTED

    def c_unit_mod_ell(self) -> int:
        """c / ell^ord(c) modulo ell."""
        if self.ord_c is INFINITY:
            raise ZeroInput("c is zero and has no unit part")
        return (self.c // self.prime**self.ord_c) % self.prime

    def c_scalar(self) -> PadicScalar:
        if self.ord_c is INFINITY:
            return PadicScalar.zero(self.prime, self.precision)
        digits = self.precision - self.ord_c
        unit = (self.c // self.prime**self.ord_c) % self.prime**digits
        return PadicScalar(self.prime, digits, self.ord_c, unit)

    def reconstruct(self) -> int:
        """epsilon * ell^b * (1 + c) modulo ell^(b + M); requires b >= 0."""
        if self.b < 0:
            raise ValueError("reconstruct() needs a nonnegative b")
        modulus = self.prime ** (self.b + self.precision)
        return self.epsilon * self.prime**self.b * (1 + self.c) % modulus


def teichmuller(u: int, ell: int, M: int) -> int:
    """The (ell-1)-st root of unity mod ell^M congruent to u mod ell."""
    if M < 1:
        raise ValueError(f"precision must be positive, got {M}")
    modulus = ell**M
    x = u % modulus
    if x % ell == 0:
        raise NonUnit(f"{u} is not a unit modulo {ell}")
    for _ in range(4 * M):
        nxt = pow(x, ell, modulus)
        if nxt == x:
            return x
        x = nxt
    raise InternalInconsistency(
        f"Frobenius iteration for {u} mod {ell}^{M} did not converge"
    )


def _signed_root_of_unity(epsilon: int, modulus: int) -> int | None:
    if epsilon == 1:
        return 1
    if epsilon == modulus - 1:
        return -1
    return None


def _decompose_unit(
    b: int,
    u: int,
    ell: int,
    M: int,
    exact: Fraction | None = None,
) -> UnitDecomposition:
    """Split a value with known valuation b and unit residue u mod ell^M."""
    modulus = ell**M
    u %= modulus
    if u % ell == 0:
        raise NonUnit(f"unit residue {u} is divisible by {ell}")
    epsilon = teichmuller(u, ell, M)
    c = (u * pow(epsilon, -1, modulus) - 1) % modulus
    ord_b = ord_ell(b, ell)

    if c != 0:
        ord_c: Valuation = _int_ord(c, ell)
    else:
        # c vanishes exactly only when the value is +-ell^b on the nose
        sign = _signed_root_of_unity(epsilon, modulus)
        if exact is None or sign is None or exact != sign * Fraction(ell) ** b:
            raise PrecisionExhausted(
                f"c is 0 modulo {ell}^{M}; retry with a larger precision", M
            )
        ord_c = INFINITY

    b_plus_c = (b + c) % modulus
    if b_plus_c != 0:
        ord_b_plus_c: Valuation | Resolution = _int_ord(b_plus_c, ell)
    elif ord_c is INFINITY:
        ord_b_plus_c = ord_b
    else:
        logger.debug("ord(b+c) unresolved at %s^%d", ell, M)
        ord_b_plus_c = PRECISION_EXHAUSTED

    return UnitDecomposition(
        prime=ell,
        precision=M,
        epsilon=epsilon,
        b=b,
        c=c,
        ord_c=ord_c,
        ord_b=ord_b,
        ord_b_plus_c=ord_b_plus_c,
        w=min(ord_b, ord_c),
    )


def decompose(x: int | Rational, ell: int, M: int) -> UnitDecomposition:
    """Decompose a nonzero exact rational as epsilon * ell^b * (1 + c)."""
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("cannot decompose 0")
    b = ord_ell(x, ell)
    return _decompose_unit(b, unit_residue(x, ell, M), ell, M, exact=x)


def legendre(n: int, ell: int) -> int:
    """Legendre symbol (n / ell) as -1, 0 or +1."""
    return int(legendre_symbol(n % ell, ell))


def binom_mod_ell(n: int, k: int, ell: int) -> int:
    """C(n, k) mod ell by Lucas' theorem (products of base-ell digit binomials)."""
    if n < 0 or k < 0:
        raise ValueError(f"binom_mod_ell needs nonnegative arguments, got ({n}, {k})")
    result = 1
    while n or k:
        n, n_digit = divmod(n, ell)
        k, k_digit = divmod(k, ell)
        if k_digit > n_digit:
            return 0
        result = result * comb(n_digit, k_digit) % ell
    return result


def binom_mod_ell_negative_upper(j: int, k: int, ell: int) -> int:
    """C(-j, k) mod ell via C(-j, k) = (-1)^k C(j + k - 1, k), for j >= 1."""
    if j < 1:
        raise ValueError(f"expected a positive j, got {j}")
    value = binom_mod_ell(j + k - 1, k, ell)
    return (-value if k % 2 else value) % ell


def prime_factors(n: int, trial_limit: int = TRIAL_DIVISION_LIMIT) -> dict[int, int]:
    """Factor n by trial division up to trial_limit and a primality check on the rest."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    factors = factorint(n, limit=trial_limit)
    for p in factors:
        if not isprime(p):
            raise UnfactoredCofactor(
                f"{n} has an unfactored cofactor {p} beyond trial division"
            )
    return {int(p): int(e) for p, e in sorted(factors.items())}


@dataclass(frozen=True)
class CurveParams:
    """(ell, N, r, s, t, delta) with ell^(N-1) || r, ell not dividing s*t*delta."""

    ell: int
    N: int
    r: int
    s: int
    t: int
    delta: int
    r_prime: int = field(init=False)

    def __post_init__(self):
        errors = self.check(self.ell, self.N, self.r, self.s, self.t, self.delta)
        if errors:
            raise InvalidParams(errors)
        object.__setattr__(self, "r_prime", self.r // self.ell ** (self.N - 1))

    @staticmethod
    def check(ell: int, N: int, r: int, s: int, t: int, delta: int) -> list[CheckError]:
        """Return one CheckError per violated invariant (empty when admissible)."""
        errors: list[CheckError] = []

        def fail(param: str, message: str) -> None:
            errors.append(CheckError(source={"param": param}, message=message, entry=None))

        if not (isinstance(ell, int) and ell > 2 and isprime(ell)):
            fail("ell", f"ell={ell} must be an odd prime")
        if not (isinstance(N, int) and N >= 1):
            fail("N", f"N={N} must be a positive integer")
        for name, value in (("r", r), ("s", s), ("t", t)):
            if not (isinstance(value, int) and value > 0):
                fail(name, f"{name}={value} must be a positive integer")
        if not (isinstance(delta, int) and delta > 0):
            fail("delta", f"delta={delta} must be a positive integer")
        if errors:
            return errors

        power = ell**N
        if r + s + t != power:
            fail("r+s+t", f"r+s+t={r + s + t} must equal ell^N={power}")
        if r % ell ** (N - 1) != 0 or r % power == 0:
            fail("r", f"r={r} must be divisible by ell^(N-1)={ell ** (N - 1)} exactly")
        if s % ell == 0:
            fail("s", f"s={s} must not be divisible by ell={ell}")
        if t % ell == 0:
            fail("t", f"t={t} must not be divisible by ell={ell}")
        if delta % ell == 0:
            fail("delta", f"delta={delta} must not be divisible by ell={ell}")
        else:
            try:
                heavy = [p for p, e in prime_factors(delta).items() if e >= power]
            except UnfactoredCofactor as e:
                fail("delta", f"delta={delta} could not be factored: {e}")
            else:
                if heavy:
                    fail(
                        "delta",
                        f"delta={delta} must be ell^N-th-power-free "
                        f"(divisible by p^{power} for p in {heavy})",
                    )
        return errors


def admissible_triples(ell: int, N: int) -> list[tuple[int, int, int]]:
    """Every (r, s, t) with r+s+t = ell^N, ell^(N-1) || r and ell not dividing s*t."""
    power = ell**N
    step = ell ** (N - 1)
    triples = []
    for r_prime in range(1, ell):
        r = step * r_prime
        for s in range(1, power - r):
            t = power - r - s
            if s % ell and t % ell:
                triples.append((r, s, t))
    return triples


def value_of_a(params: CurveParams, M: int | None = None) -> UnitDecomposition:
    """Decompose a = r^r s^s (ell^N - t)^t delta^(r+s) factor by factor."""
    ell, N = params.ell, params.N
    M = default_precision(N) if M is None else M
    working = ell ** (M + GUARD_DIGITS)

    b = 0
    unit = 1
    for base, exponent in (
        (params.r, params.r),
        (params.s, params.s),
        (ell**N - params.t, params.t),
        (params.delta, params.r + params.s),
    ):
        v = _int_ord(base, ell)
        b += v * exponent
        unit = unit * pow(base // ell**v, exponent, working) % working

    expected_b = ell ** (N - 1) * (N - 1) * params.r_prime
    if b != expected_b:
        raise InternalInconsistency(
            f"ord(a)={b} disagrees with ell^(N-1)(N-1)r'={expected_b}"
        )
    return _decompose_unit(b, unit, ell, M)
