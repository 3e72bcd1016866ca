"""Local and global root numbers of phi_delta^(N).

The global root number is the product of a fourth root of unity at infinity,
a Legendre sign at each prime p | delta, and a fourth root of unity at ell
built from the relative root number W(phi_{delta,pi}, eta). The i-powers at
infinity and at ell cancel, so the product is real.

HOW IT WORKS:
1. Decompose a = r^r s^s (ell^N - t)^t delta^(r+s) at precision M, doubling M
   while a needed valuation is unresolved
2. Classify the conductor branch and take f'
3. Relative root number: Legendre(2, ell) off the ramified branches,
   -Legendre(r's t * arg, ell) on them, with arg from the wild symbol value
4. W_ell is computed twice, from the symbol exponent and from the closed
   form; disagreement raises InternalInconsistency
5. Multiply everything as FourthRoot exponents and check the result is real

A degenerate symbol argument does not abort the run: the affected factors
and the global value become Diagnostic.DIAGNOSTIC and the reason is added to
the report notes.
"""

__copyright__ = "Copyright (C) 2026 slimslickner"
__license__ = "GNU GPLv2"

import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import cache
from math import prod
from typing import Iterable

from fermat_root_numbers.conductors import (
    Branch,
    ConductorClassification,
    FirstFactorCase,
    first_factor_case,
    phi_exponent,
    sharifi_conductor,
)
from fermat_root_numbers.errors import (
    DegenerateArgument,
    InternalInconsistency,
    InvalidParams,
    PrecisionExhausted,
)
from fermat_root_numbers.hilbert import (
    c_ell_total,
    symbol_with_a,
    unit_symbol_exponent,
)
from fermat_root_numbers.jtable import JTable
from fermat_root_numbers.padic_core import (
    INFINITY,
    CurveParams,
    UnitDecomposition,
    default_precision,
    legendre,
    prime_factors,
    value_of_a,
)

logger = logging.getLogger(__name__)

MAX_PRECISION_RETRIES = 4


class Diagnostic(enum.Enum):
    DIAGNOSTIC = "DIAGNOSTIC"

    def __str__(self) -> str:
        return self.value


DIAGNOSTIC = Diagnostic.DIAGNOSTIC

_FOURTH_ROOT_NAMES = ("1", "i", "-1", "-i")


@dataclass(frozen=True)
class FourthRoot:
    """i^exponent."""

    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % 4)

    @classmethod
    def from_sign(cls, sign: int) -> "FourthRoot":
        if sign not in (1, -1):
            raise ValueError(f"expected a sign, got {sign}")
        return cls(0 if sign == 1 else 2)

    @classmethod
    def parse(cls, text: str) -> "FourthRoot":
        return cls(_FOURTH_ROOT_NAMES.index(text))

    def __mul__(self, other: "FourthRoot") -> "FourthRoot":
        return FourthRoot(self.exponent + other.exponent)

    @property
    def is_real(self) -> bool:
        return self.exponent % 2 == 0

    @property
    def sign(self) -> int:
        if not self.is_real:
            raise ValueError(f"{self} is not real")
        return 1 if self.exponent == 0 else -1

    def __str__(self) -> str:
        return _FOURTH_ROOT_NAMES[self.exponent]


def eta_exponent(ell: int, N: int) -> int:
    """ell^(N-1) (ell - 1) / 2, the exponent of i in W(eta)."""
    return ell ** (N - 1) * (ell - 1) // 2


def w_infinity(ell: int, N: int) -> FourthRoot:
    """i^(-ell^(N-1)(ell-1)/2), the local root number at infinity."""
    return FourthRoot(-eta_exponent(ell, N))


@cache
def _delta_primes(delta: int) -> tuple[int, ...]:
    return tuple(prime_factors(delta))


def w_finite(p: int, params: CurveParams) -> int:
    """Legendre(p, ell) when p | delta, else +1."""
    if p == params.ell:
        raise ValueError(f"w_finite is defined for p != ell, got p={p}")
    if params.delta % p:
        return 1
    return legendre(p, params.ell)


def local_factors(params: CurveParams) -> dict[int, int]:
    """W_p for each prime p | delta, once per prime."""
    return {p: w_finite(p, params) for p in _delta_primes(params.delta)}


@dataclass(frozen=True)
class RelativeRootNumber:
    f_prime: int
    value: int | Diagnostic
    note: str | None = None


def _degenerate_note(e: DegenerateArgument) -> str:
    if e.valuation is None:
        return f"degenerate symbol argument: {e}"
    return f"degenerate symbol argument (valuation {e.valuation:+d}): {e}"


def relative_root_number(
    params: CurveParams,
    d: UnitDecomposition,
    jt: JTable,
    lenient: bool = False,
    cls: ConductorClassification | None = None,
) -> RelativeRootNumber:
    """f' and W(phi_{delta,pi}, eta), composed from the wild symbol exponent."""
    ell, N = params.ell, params.N
    cls = sharifi_conductor(d, N) if cls is None else cls
    f_prime = phi_exponent(cls)
    if not cls.is_ramified:
        return RelativeRootNumber(f_prime, legendre(2, ell))
    try:
        exponent = symbol_with_a(d, cls, jt, N, lenient=lenient)
    except DegenerateArgument as e:
        return RelativeRootNumber(f_prime, DIAGNOSTIC, _degenerate_note(e))
    # the symbol exponent carries a factor 2 that the relative sign does not
    half = exponent * pow(2, -1, ell)
    rst = params.r_prime * params.s * params.t
    return RelativeRootNumber(f_prime, -legendre(rst * half, ell))


def closed_form_w_ell(
    params: CurveParams,
    d: UnitDecomposition,
    cls: ConductorClassification,
    jt: JTable,
    lenient: bool = False,
) -> FourthRoot:
    """W_ell from the full symbol exponent [1 + pi^(f-1), 1 + c].

    The exponent (1 - f)(2c/ell) J log(1 + c)/c is evaluated as an exact
    ell-adic number with unit_symbol_exponent and reduced to a zeta_ell power.
    The branch sign enters through (1 - f), so neither argument_unit nor
    branch_multiplier is consulted. In lenient mode J is rescaled by the
    power of ell that makes (c / ell^N) J a unit.
    """
    ell, N = params.ell, params.N
    eta = FourthRoot(eta_exponent(ell, N))
    if not cls.is_ramified:
        return FourthRoot.from_sign(legendre(2, ell)) * eta
    if d.ord_c is INFINITY:
        raise DegenerateArgument(None, "c is zero, so the symbol argument vanishes")
    entry = jt.get(N, cls.f)
    surplus = d.ord_c - N + entry.valuation
    if surplus and not lenient:
        raise DegenerateArgument(
            surplus, f"c J(N={N}, f={cls.f}) / {ell}^{N} has valuation {surplus}"
        )
    entry = replace(entry, valuation=entry.valuation - surplus)
    exponent = unit_symbol_exponent(
        d.c_scalar(), cls.f, entry.to_scalar(ell, d.precision), ell, N
    ).to_zeta_ell()
    rst = params.r_prime * params.s * params.t
    half = exponent * pow(2, -1, ell)
    return FourthRoot.from_sign(-legendre(rst * half, ell)) * eta


def w_ell(
    params: CurveParams,
    d: UnitDecomposition,
    jt: JTable,
    lenient: bool = False,
    cls: ConductorClassification | None = None,
) -> FourthRoot | Diagnostic:
    """relative * i^(ell^(N-1)(ell-1)/2), checked against the closed form."""
    cls = sharifi_conductor(d, params.N) if cls is None else cls
    relative = relative_root_number(params, d, jt, lenient=lenient, cls=cls)
    if relative.value is DIAGNOSTIC:
        return DIAGNOSTIC
    composed = FourthRoot.from_sign(relative.value) * FourthRoot(
        eta_exponent(params.ell, params.N)
    )
    closed = closed_form_w_ell(params, d, cls, jt, lenient=lenient)
    if composed != closed:
        raise InternalInconsistency(
            f"W_ell routes disagree for {params}: composed {composed}, closed form {closed}"
        )
    return composed


@dataclass(frozen=True)
class RootNumberReport:
    params: CurveParams
    decomposition: UnitDecomposition
    classification: ConductorClassification
    f_prime: int
    local_infinity: FourthRoot
    local_factors: dict[int, int]
    relative: int | Diagnostic
    local_ell: FourthRoot | Diagnostic
    global_: int | Diagnostic
    first_factor: FirstFactorCase
    j_usage: tuple[tuple[int, int], ...] = ()
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def is_diagnostic(self) -> bool:
        return self.global_ is DIAGNOSTIC


def resolve_decomposition(
    params: CurveParams, precision: int | None = None
) -> tuple[UnitDecomposition, ConductorClassification, int]:
    """Decompose a and classify it, doubling the precision while unresolved."""
    M = default_precision(params.N) if precision is None else precision
    retries = 0
    while True:
        try:
            d = value_of_a(params, M)
            return d, sharifi_conductor(d, params.N), M
        except PrecisionExhausted as e:
            if retries == MAX_PRECISION_RETRIES:
                raise PrecisionExhausted(
                    f"{e} (gave up after {MAX_PRECISION_RETRIES} retries)", M
                ) from e
            logger.info("Precision %d exhausted for %s, retrying at %d", M, params, 2 * M)
            retries += 1
            M *= 2


def assemble_report(
    params: CurveParams,
    d: UnitDecomposition,
    cls: ConductorClassification,
    jt: JTable,
    lenient: bool = False,
) -> RootNumberReport:
    """Local factors and their product for an already classified decomposition."""
    ell, N = params.ell, params.N
    notes: list[str] = []

    case = first_factor_case(cls, d.ord_c, d.ord_b_plus_c, ell, N)
    if case is FirstFactorCase.WILD:
        total = _cached_c_ell_total(ell, N)
        if total != 0:
            notes.append(f"sum of c_ell(i) is {total} mod {ell}, first factor may be nontrivial")
    if cls.branch is Branch.TAME_TWO:
        notes.append("w = N = ord c with ord(b+c) > N: conductor 2, relative value Legendre(2, ell)")

    relative = relative_root_number(params, d, jt, lenient=lenient, cls=cls)
    if relative.note:
        notes.append(relative.note)
    local_ell = w_ell(params, d, jt, lenient=lenient, cls=cls)

    local_infinity = w_infinity(ell, N)
    finite = local_factors(params)
    if local_ell is DIAGNOSTIC:
        global_value: int | Diagnostic = DIAGNOSTIC
    else:
        product = local_infinity * local_ell
        for sign in finite.values():
            product = product * FourthRoot.from_sign(sign)
        if not product.is_real:
            raise InternalInconsistency(f"global root number {product} is not real for {params}")
        global_value = product.sign
        if global_value != relative.value * prod(finite.values()):
            raise InternalInconsistency(f"i-powers did not cancel for {params}")

    return RootNumberReport(
        params=params,
        decomposition=d,
        classification=cls,
        f_prime=relative.f_prime,
        local_infinity=local_infinity,
        local_factors=finite,
        relative=relative.value,
        local_ell=local_ell,
        global_=global_value,
        first_factor=case,
        j_usage=((N, cls.f),) if cls.is_ramified else (),
        notes=tuple(notes),
    )


def global_root_number(
    params: CurveParams,
    jt: JTable,
    precision: int | None = None,
    lenient: bool = False,
) -> RootNumberReport:
    """Evaluate every local factor and the global root number of phi_delta^(N).

    Args:
        params: Admissible (ell, N, r, s, t, delta)
        jt: J(N, f) values for the ramified branches
        precision: Starting working precision; raised while valuations are
            unresolved and noted in the report
        lenient: Use the unit part of a degenerate symbol argument instead of
            reporting DIAGNOSTIC

    Returns:
        RootNumberReport whose global_ is +1, -1 or DIAGNOSTIC
    """
    d, cls, M = resolve_decomposition(params, precision)
    report = assemble_report(params, d, cls, jt, lenient=lenient)
    if precision is not None and M != precision:
        report = replace(report, notes=report.notes + (f"precision raised to {M}",))
    logger.debug("W(%s) = %s", params, report.global_)
    return report


@cache
def _cached_c_ell_total(ell: int, N: int) -> int:
    return c_ell_total(ell, N)


@dataclass(frozen=True)
class SweepPoint:
    delta: int
    report: RootNumberReport | None
    note: str | None = None


def sweep(
    ell: int,
    N: int,
    r: int,
    s: int,
    t: int,
    deltas: Iterable[int],
    jt: JTable,
    precision: int | None = None,
    lenient: bool = False,
    workers: int | None = None,
) -> list[SweepPoint]:
    """Evaluate every delta independently; results keep the input order."""
    deltas = list(deltas)

    def point(delta: int) -> SweepPoint:
        try:
            params = CurveParams(ell, N, r, s, t, delta)
        except InvalidParams as e:
            return SweepPoint(delta, None, f"skipped delta={delta}: {e}")
        report = global_root_number(params, jt, precision=precision, lenient=lenient)
        return SweepPoint(delta, report)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            points = list(executor.map(point, deltas))
    else:
        points = [point(delta) for delta in deltas]

    skipped = [p for p in points if p.report is None]
    if skipped:
        logger.warning("Skipped %d invalid delta values in sweep", len(skipped))
    return points
