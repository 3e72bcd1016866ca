"""Algebraic checks on the curve models behind the root-number formula.

WHAT IT DOES:
- verify_rationality: with (s, t) = (1, ell^(N-1) - 1) the affine curve
  Y^m = delta^(-s-2t) X^s (delta - X)^t, m = ell^(N-1), is rational. The
  check clears denominators in (Y/(delta-X))^m (delta - X) = delta^(-s-2t) X
  and compares it with (delta - X) times the relation, then substitutes an
  explicit parametrization back into the relation
- verify_plane_model: for N = 2 the curve is birational to the plane curve
  delta^(s+2t) u + u^(ell+1) = delta v^ell via X = (K u - u^(ell+1) +
  delta v^ell) / (2 v^ell), Y = u / v, K = delta^(2 ell - 1). The cleared
  target polynomial must lie in the ideal of the relation; this is shown by
  exact reduction with sympy, or by evaluation at random points on the
  relation over F_p with p = prevprime(2^62)
- genus_plane_model / plane_model_degree: (ell^2 - ell) / 2 and the degree
  ell + 1 of the plane model, whose smooth-plane-curve genus agrees

delta stays a polynomial variable throughout, so each check covers every
delta at once.

DISPLAYED FORMS:
The rationality identity without the factor (delta - X), and the plane-model
factor (-K u + u^(ell+1) - delta v^ell) / (2 v^ell) for delta - X, do not
reduce to zero. Both reports carry that residual and it is logged; the
corrected forms are what the checks assert.

NEGATIVE CONTROLS:
Perturbation.EXPONENT, SIGN_FLIP and DELTA_POWER break the identity in
three different ways and every check must then report False.
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"

import enum
import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from sympy import (
    Add,
    Expr,
    Mul,
    Poly,
    Rational,
    cancel,
    expand,
    isprime,
    prevprime,
    reduced,
    symbols,
)

from fermat_root_numbers.errors import PreconditionViolated

logger = logging.getLogger(__name__)

FIELD_PRIME = prevprime(2**62)
DEFAULT_TRIALS = 40

PlaneMethod = Literal["auto", "exact", "random"]


class Perturbation(enum.Enum):
    EXPONENT = "exponent"
    SIGN_FLIP = "sign-flip"
    DELTA_POWER = "delta-power"


@dataclass(frozen=True)
class MultivariatePolynomial:
    """Exact rational polynomial as a map from exponent vectors to coefficients."""

    variables: tuple[str, ...]
    terms: dict[tuple[int, ...], Fraction]

    def __post_init__(self):
        for monomial, coefficient in self.terms.items():
            if len(monomial) != len(self.variables):
                raise ValueError(f"monomial {monomial} does not match {self.variables}")
            if coefficient == 0:
                raise ValueError(f"zero coefficient stored for {monomial}")

    @classmethod
    def from_expr(cls, expr: Expr, variables: Sequence[str]) -> "MultivariatePolynomial":
        gens = symbols(list(variables))
        poly = Poly(expand(expr), *gens)
        terms = {
            tuple(int(e) for e in monomial): Fraction(int(c.p), int(c.q))
            for monomial, c in poly.as_dict().items()
            if c != 0
        }
        return cls(tuple(variables), terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def evaluate_mod(self, point: Sequence[int], p: int) -> int:
        total = 0
        for monomial, coefficient in self.terms.items():
            value = coefficient.numerator * pow(coefficient.denominator, -1, p)
            for x, e in zip(point, monomial):
                value = value * pow(x, e, p) % p
            total += value
        return total % p

    def to_expr(self) -> Expr:
        gens = symbols(list(self.variables))
        return Add(
            *(
                Rational(c.numerator, c.denominator) * Mul(*(g**e for g, e in zip(gens, m)))
                for m, c in self.terms.items()
            )
        )

    def __str__(self) -> str:
        return str(self.to_expr())


def _check_ell(ell: int) -> None:
    if not (isinstance(ell, int) and ell > 2 and isprime(ell)):
        raise PreconditionViolated(f"ell={ell} must be an odd prime")


# ---------------------------------------------------------------------------
# Rationality of the s = 1 curve
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalityReport:
    ell: int
    N: int
    perturbation: Perturbation | None
    identity_holds: bool
    parametrization_holds: bool
    displayed_residual: MultivariatePolynomial

    @property
    def holds(self) -> bool:
        return self.identity_holds and self.parametrization_holds


def _rationality_relation(X, Y, d, m: int, perturbation: Perturbation | None):
    """delta^(s+2t) Y^m - X^s (delta - X)^t with s = 1, t = m - 1."""
    s, t = 1, m - 1
    delta_power = s + 2 * t
    factor = d - X
    if perturbation is Perturbation.EXPONENT:
        t += 1
    elif perturbation is Perturbation.SIGN_FLIP:
        factor = d + X
    elif perturbation is Perturbation.DELTA_POWER:
        delta_power += 1
    return d**delta_power * Y**m - X**s * factor**t


def verify_rationality(
    ell: int,
    N: int,
    s: int | None = None,
    t: int | None = None,
    perturbation: Perturbation | None = None,
) -> RationalityReport:
    """Check that the s = 1 curve at level N is rational.

    Args:
        ell: An odd prime
        N: The level, at least 2
        s: Optional first exponent; only 1 is accepted
        t: Optional second exponent; only ell^(N-1) - 1 is accepted
        perturbation: Deliberately broken relation for negative controls

    Returns:
        RationalityReport with the cleared identity, the parametrization
        check and the residual of the displayed form
    """
    _check_ell(ell)
    if N < 2:
        raise PreconditionViolated(f"rationality check needs N >= 2, got N={N}")
    m = ell ** (N - 1)
    if (s is not None and s != 1) or (t is not None and t != m - 1):
        raise PreconditionViolated(f"(s, t) must be (1, {m - 1}), got ({s}, {t})")

    X, Y, d = symbols("X Y delta")
    names = ("X", "Y", "delta")
    relation = _rationality_relation(X, Y, d, m, perturbation)
    delta_power = 1 + 2 * (m - 1)

    # delta^(s+2t) (delta - X)^m * [(Y/(delta-X))^m (delta-X) - delta^(-s-2t) X]
    identity = d**delta_power * Y**m * (d - X) - X * (d - X) ** m
    difference = MultivariatePolynomial.from_expr(identity - (d - X) * relation, names)

    # displayed form: (Y/(delta-X))^m = delta^(-s-2t) X, cleared the same way
    displayed = d**delta_power * Y**m - X * (d - X) ** m
    displayed_residual = MultivariatePolynomial.from_expr(displayed - relation, names)
    if not displayed_residual.is_zero:
        logger.info(
            "Displayed rationality identity leaves a residual of degree %d at ell=%d N=%d",
            displayed_residual.total_degree, ell, N,
        )

    x_of_z, y_of_z = rational_parametrization(ell, N)
    parametrization_holds = cancel(relation.subs({X: x_of_z, Y: y_of_z})) == 0

    report = RationalityReport(
        ell=ell,
        N=N,
        perturbation=perturbation,
        identity_holds=difference.is_zero,
        parametrization_holds=bool(parametrization_holds),
        displayed_residual=displayed_residual,
    )
    logger.debug("Rationality check ell=%d N=%d %s: %s", ell, N, perturbation, report.holds)
    return report


def rational_parametrization(ell: int, N: int) -> tuple[Expr, Expr]:
    """(X(Z), Y(Z)) covering the s = 1 curve, with delta as a free symbol."""
    _check_ell(ell)
    m = ell ** (N - 1)
    d, Z = symbols("delta Z")
    k = d ** (-(2 * m - 1))
    return d * Z**m / (k + Z**m), Z * d * k / (k + Z**m)


# ---------------------------------------------------------------------------
# Plane model for N = 2
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneModelReport:
    ell: int
    method: str
    perturbation: Perturbation | None
    holds: bool
    seed: int | None = None
    trials: int = 0
    failure_log2: float | None = None
    remainder: MultivariatePolynomial | None = None


def _plane_polynomials(ell: int, vl, u, d, perturbation: Perturbation | None):
    """(target, relation) with vl standing for v^ell."""
    K = d ** (2 * ell - 1)
    x_num = K * u - u ** (ell + 1) + d * vl
    delta_minus_x_num = d * vl - K * u + u ** (ell + 1)
    exponent = ell - 1
    scale = K
    if perturbation is Perturbation.SIGN_FLIP:
        delta_minus_x_num = -K * u + u ** (ell + 1) - d * vl
    elif perturbation is Perturbation.EXPONENT:
        exponent = ell
    elif perturbation is Perturbation.DELTA_POWER:
        scale = K * d
    target = x_num * delta_minus_x_num**exponent - scale * 2**ell * u ** (ell**2)
    relation = K * u + u ** (ell + 1) - d * vl
    return expand(target), relation


def _plane_exact(ell: int, perturbation: Perturbation | None) -> PlaneModelReport:
    u, v, d = symbols("u v delta")
    target, relation = _plane_polynomials(ell, v**ell, u, d, perturbation)
    _, remainder = reduced(target, [relation], u, v, d, order="lex")
    remainder = MultivariatePolynomial.from_expr(remainder, ("u", "v", "delta"))
    return PlaneModelReport(
        ell=ell,
        method="exact",
        perturbation=perturbation,
        holds=remainder.is_zero,
        remainder=remainder,
    )


def _plane_random(
    ell: int, perturbation: Perturbation | None, seed: int, trials: int
) -> PlaneModelReport:
    u, V, d = symbols("u V delta")
    target, _ = _plane_polynomials(ell, V, u, d, perturbation)
    poly = MultivariatePolynomial.from_expr(target, ("u", "V", "delta"))
    p = FIELD_PRIME
    rng = random.Random(seed)

    holds = True
    for _ in range(trials):
        x = rng.randrange(1, p)
        delta = rng.randrange(1, p)
        K = pow(delta, 2 * ell - 1, p)
        # a point on the relation: solve for V = v^ell
        vl = (K * x + pow(x, ell + 1, p)) * pow(delta, -1, p) % p
        if poly.evaluate_mod((x, vl, delta), p) != 0:
            holds = False
            break

    degree = max(poly.total_degree, 1)
    return PlaneModelReport(
        ell=ell,
        method="random",
        perturbation=perturbation,
        holds=holds,
        seed=seed,
        trials=trials,
        failure_log2=trials * math.log2(degree / p),
    )


def verify_plane_model(
    ell: int,
    method: PlaneMethod = "auto",
    perturbation: Perturbation | None = None,
    seed: int = 0,
    trials: int = DEFAULT_TRIALS,
    N: int = 2,
    s: int | None = None,
    t: int | None = None,
) -> PlaneModelReport:
    """Check the N = 2 plane model by exact reduction or random evaluation.

    "auto" reduces exactly for ell = 3 and evaluates at random points on the
    relation over F_p otherwise; the random report carries log2 of the
    failure bound (degree / p)^trials.
    """
    _check_ell(ell)
    if N != 2 or (s is not None and s != 1) or (t is not None and t != ell - 1):
        raise PreconditionViolated(
            f"plane model needs N = 2 and (s, t) = (1, {ell - 1}), got N={N}, ({s}, {t})"
        )
    if method == "auto":
        method = "exact" if ell == 3 else "random"
    if method == "exact":
        report = _plane_exact(ell, perturbation)
    elif method == "random":
        report = _plane_random(ell, perturbation, seed, trials)
    else:
        raise ValueError(f"unknown method {method!r}")

    if perturbation is None and ell == 3 and method == "exact":
        displayed = _plane_exact(ell, Perturbation.SIGN_FLIP)
        if not displayed.holds:
            logger.info(
                "Displayed delta - X factor does not reduce to zero at ell=%d "
                "(remainder of degree %d)",
                ell, displayed.remainder.total_degree,
            )
    logger.debug("Plane model ell=%d %s %s: %s", ell, method, perturbation, report.holds)
    return report


def genus_plane_model(ell: int) -> int:
    _check_ell(ell)
    return (ell**2 - ell) // 2


def plane_model_degree(ell: int) -> int:
    """Degree of the homogenized plane model delta^(2 ell - 1) u + u^(ell+1) = delta v^ell."""
    _check_ell(ell)
    return ell + 1


def plane_curve_genus(degree: int) -> int:
    """Genus (d-1)(d-2)/2 of a smooth plane curve of degree d."""
    return (degree - 1) * (degree - 2) // 2
