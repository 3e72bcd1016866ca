"""Tests for c_ell residues, the residue cross-check and symbol values."""

import random
from fractions import Fraction
from math import comb, factorial

import pytest

from fermat_root_numbers.conductors import (
    Branch,
    ConductorClassification,
    classify_valuations,
    sharifi_conductor,
)
from fermat_root_numbers.errors import (
    BadIndex,
    DegenerateArgument,
    InexactDivision,
    InternalInconsistency,
    MissingJEntry,
    PreconditionViolated,
)
from fermat_root_numbers.hilbert import (
    SymbolExponent,
    argument_unit,
    branch_multiplier,
    branch_sign_and_e,
    c_ell_class_sums,
    c_ell_coeff,
    c_ell_exact,
    c_ell_series_route,
    c_ell_total,
    difference_sum,
    symbol_with_a,
    unit_symbol_exponent,
    vostokov_check,
)
from fermat_root_numbers.jtable import JEntry, JTable
from fermat_root_numbers.padic_core import (
    CurveParams,
    PadicScalar,
    UnitDecomposition,
    value_of_a,
)

UNITS_3_2 = (1, 2, 4, 5, 7, 8)
LEVELS = [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)]


def jtable(ell=3, **entries):
    """jtable(J22=(1, 2)) -> table with J(2, 2) = 3^1 * 2."""
    table = JTable(ell)
    for name, (valuation, unit) in entries.items():
        table.set(int(name[1]), int(name[2:]), JEntry(valuation, unit))
    return table


# ---------------------------------------------------------------------------
# Difference operator
# ---------------------------------------------------------------------------


class TestDifferenceSum:
    def test_constant(self):
        assert difference_sum([5], 1) == 0

    def test_low_degree_vanishes(self):
        assert difference_sum([0, 0, 1], 3) == 0
        for n in range(2, 7):
            assert difference_sum([3, -1, 4, 1, -5][:n], n) == 0

    def test_degree_equal_to_n(self):
        assert difference_sum([0, 0, 0, 1], 3) == -6

    @pytest.mark.parametrize("n", range(1, 9))
    def test_random_polynomials(self, n):
        rng = random.Random(n)
        for _ in range(200):
            coefficients = [rng.randint(-5, 5) for _ in range(rng.randint(1, n + 1))]
            direct = sum(
                a * sum((-1) ** r * comb(n, r) * r**k for r in range(n + 1))
                for k, a in enumerate(coefficients)
            )
            assert difference_sum(coefficients, n) == direct
            if len(coefficients) <= n:
                assert direct == 0
            else:
                assert direct == (-1) ** n * factorial(n) * coefficients[n]


# ---------------------------------------------------------------------------
# c_ell(i)
# ---------------------------------------------------------------------------


class TestCEll:
    @pytest.mark.parametrize("i, expected", list(zip(UNITS_3_2, (2, 0, 1, 2, 0, 1))))
    def test_values(self, i, expected):
        assert c_ell_coeff(i, 3, 2) == expected

    def test_exact_sum_first_unit(self):
        assert c_ell_exact(1, 3, 2) == 56 - 84

    @pytest.mark.parametrize("ell, N", LEVELS)
    def test_series_route_agrees(self, ell, N):
        for i in range(1, ell**N):
            if i % ell:
                assert c_ell_series_route(i, ell, N) == c_ell_coeff(i, ell, N)

    def test_independent_of_inverse_representative(self):
        # 1 and 10 are both inverses of 1 modulo 9
        assert c_ell_coeff(1, 3, 2, representative=10) == c_ell_coeff(1, 3, 2)

    @pytest.mark.parametrize("ell, N", LEVELS)
    def test_total_vanishes(self, ell, N):
        assert c_ell_total(ell, N) == 0

    @pytest.mark.parametrize("ell, N", LEVELS)
    def test_class_sums(self, ell, N):
        assert c_ell_class_sums(ell, N) == dict.fromkeys(range(1, ell), 0)

    def test_exact_sums_reduce_to_residues(self):
        for ell, N in ((3, 2), (5, 2), (7, 2)):
            for i in range(1, ell**N):
                if i % ell:
                    assert c_ell_exact(i, ell, N) % ell == c_ell_coeff(i, ell, N)

    def test_not_constant_on_classes(self):
        # 1, 4 and 7 share a class mod 3 but not a residue
        assert [c_ell_coeff(i, 3, 2) for i in (1, 4, 7)] == [2, 1, 0]

    def test_total_cross_check(self, monkeypatch):
        from fermat_root_numbers import hilbert

        monkeypatch.setattr(hilbert, "c_ell_exact", lambda i, ell, N: int(i == 1))
        with pytest.raises(InternalInconsistency):
            c_ell_total(3, 2)

    def test_bad_index(self):
        with pytest.raises(BadIndex):
            c_ell_coeff(3, 3, 2)
        with pytest.raises(BadIndex):
            c_ell_coeff(2, 3, 2, representative=4)

    def test_needs_level_two(self):
        with pytest.raises(PreconditionViolated):
            c_ell_coeff(1, 3, 1)


class TestVostokov:
    def test_ell_three(self):
        report = vostokov_check(1, 3, 2)
        assert report.a_ell == 1
        assert report.ell_c == 6
        assert not report.match
        assert report.frobenius_coeff == -2 % 9
        assert report.corrections == {1: -3, 2: 12, 3: -8}
        assert report.residue_numerator == 3
        assert report.residue_quotient == 1
        assert not report.quotient_match

    def test_corrections_account_for_the_coefficient(self):
        report = vostokov_check(1, 3, 2)
        assert sum(report.corrections.values()) % 9 == report.a_ell

    @pytest.mark.parametrize(
        "ell, j", [(ell, j) for ell in (5, 7) for j in range(1, ell**2) if j % ell]
    )
    def test_every_unit_index(self, ell, j):
        report = vostokov_check(j, ell, 2)
        assert report.match
        assert report.frobenius_vanishes
        assert report.low_order_vanishes
        assert report.quotient_match
        assert report.residue_numerator == report.a_ell

    def test_higher_level(self):
        for j in (1, 2, 3, 4, 6, 124):
            assert vostokov_check(j, 5, 3).match

    def test_bad_index(self):
        with pytest.raises(BadIndex):
            vostokov_check(5, 5, 2)


# ---------------------------------------------------------------------------
# Symbol exponents
# ---------------------------------------------------------------------------


class TestUnitSymbolExponent:
    def test_zero_j(self):
        c = PadicScalar.from_rational(9, 3, 4)
        assert unit_symbol_exponent(c, 2, PadicScalar.zero(3, 4), 3, 2).value == 0

    def test_top_level_example(self):
        c = PadicScalar.from_rational(9, 3, 4)
        one = PadicScalar.from_rational(1, 3, 4)
        exponent = unit_symbol_exponent(c, 2, one, 3, 2)
        assert exponent.value == 3
        assert exponent.to_zeta_ell() == 1

    def test_equal_branch_example(self):
        c = PadicScalar.from_rational(3, 3, 4)
        one = PadicScalar.from_rational(1, 3, 4)
        exponent = unit_symbol_exponent(c, 6, one, 3, 2)
        assert exponent.value == 5
        with pytest.raises(InexactDivision):
            exponent.to_zeta_ell()

    def test_needs_positive_valuation(self):
        one = PadicScalar.from_rational(1, 3, 4)
        with pytest.raises(PreconditionViolated):
            unit_symbol_exponent(one, 2, one, 3, 2)

    def test_negative_valuation(self):
        c = PadicScalar.from_rational(3, 3, 4)
        tiny = PadicScalar.from_rational(Fraction(1, 27), 3, 4)
        with pytest.raises(InexactDivision):
            unit_symbol_exponent(c, 2, tiny, 3, 2)

    def test_reduced(self):
        with pytest.raises(ValueError):
            SymbolExponent(9, 3, 2)


class TestBranchMultiplier:
    def test_sign_and_e(self):
        assert branch_sign_and_e(2, 2) == (-1, 1)
        assert branch_sign_and_e(1, 2) == (1, 2)
        assert branch_sign_and_e(1, 3) == (1, 1)

    @pytest.mark.parametrize(
        "ell, N", [(3, 2), (3, 3), (3, 4), (3, 5), (5, 2), (5, 3), (5, 4), (7, 2), (7, 3)]
    )
    def test_prefactor_congruence(self, ell, N):
        # (1 - f) is congruent to the multiplier modulo ell
        for w in range(1, N + 1):
            for ord_b_plus_c in (w, w + 1):
                ord_c = N if w == N else w
                cls = classify_valuations(w, ord_c, ord_b_plus_c, ell, N)
                if cls.is_ramified:
                    assert (1 - cls.f - branch_multiplier(cls, N)) % ell == 0

    def test_not_ramified(self):
        with pytest.raises(PreconditionViolated):
            branch_multiplier(ConductorClassification(Branch.W_ZERO, 0, 12), 2)


class TestSymbolWithA:
    @pytest.fixture
    def top(self):
        """a with b = 9 and c = 9: w = N = ord c = ord(b+c) = 2."""
        d = UnitDecomposition(
            prime=3, precision=6, epsilon=1, b=9, c=9,
            ord_c=2, ord_b=2, ord_b_plus_c=2, w=2,
        )
        return d, sharifi_conductor(d, 2)

    def test_top_level(self, top):
        d, cls = top
        assert cls.branch is Branch.RAMIFIED_EQUAL
        assert symbol_with_a(d, cls, jtable(J22=(0, 1)), 2) == 1

    def test_linear_in_j_unit(self, top):
        d, cls = top
        assert symbol_with_a(d, cls, jtable(J22=(0, 2)), 2) == 2

    def test_agrees_with_unit_symbol_exponent(self, top):
        d, cls = top
        exponent = unit_symbol_exponent(
            d.c_scalar(), cls.f, PadicScalar.from_rational(1, 3, 4), 3, 2
        )
        assert exponent.to_zeta_ell() == symbol_with_a(d, cls, jtable(J22=(0, 1)), 2)

    def test_degenerate(self):
        d = value_of_a(CurveParams(3, 2, 3, 5, 1, 2))
        cls = sharifi_conductor(d, 2)
        with pytest.raises(DegenerateArgument) as info:
            symbol_with_a(d, cls, jtable(J26=(1, 1)), 2)
        assert info.value.valuation == 2

    def test_lenient_uses_unit_part(self, caplog):
        d = value_of_a(CurveParams(3, 2, 3, 5, 1, 2))
        cls = sharifi_conductor(d, 2)
        with caplog.at_level("INFO", logger="fermat_root_numbers.hilbert"):
            unit = argument_unit(d, cls, jtable(J26=(1, 1)), 2, lenient=True)
        assert unit == 1
        assert "valuation 2" in caplog.text

    def test_missing_entry(self, top):
        d, cls = top
        with pytest.raises(MissingJEntry):
            symbol_with_a(d, cls, JTable(3), 2)
