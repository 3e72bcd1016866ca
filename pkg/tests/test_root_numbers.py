"""Tests for local and global root numbers."""

from math import prod

import pytest

from fermat_root_numbers.conductors import Branch, FirstFactorCase, sharifi_conductor
from fermat_root_numbers.errors import (
    DegenerateArgument,
    InternalInconsistency,
    InvalidParams,
    PrecisionExhausted,
)
from fermat_root_numbers.jtable import JEntry, JTable
from fermat_root_numbers.padic_core import CurveParams, legendre, value_of_a
from fermat_root_numbers.root_numbers import (
    DIAGNOSTIC,
    FourthRoot,
    closed_form_w_ell,
    global_root_number,
    local_factors,
    relative_root_number,
    resolve_decomposition,
    sweep,
    w_ell,
    w_finite,
    w_infinity,
)


def make_table(**entries) -> JTable:
    table = JTable(3)
    for name, (valuation, unit) in entries.items():
        table.set(int(name[1]), int(name[2:]), JEntry(valuation, unit))
    return table


@pytest.fixture(scope="module")
def strict_table_1():
    return make_table(J22=(1, 2), J26=(1, 1))


# ---------------------------------------------------------------------------
# Fourth roots of unity
# ---------------------------------------------------------------------------


class TestFourthRoot:
    def test_names(self):
        assert [str(FourthRoot(k)) for k in range(4)] == ["1", "i", "-1", "-i"]
        assert FourthRoot.parse("-i") == FourthRoot(3)

    def test_multiplication(self):
        assert FourthRoot(1) * FourthRoot(3) == FourthRoot(0)
        assert FourthRoot(-1) == FourthRoot(3)

    def test_sign(self):
        assert FourthRoot.from_sign(-1).sign == -1
        with pytest.raises(ValueError):
            FourthRoot(1).sign
        with pytest.raises(ValueError):
            FourthRoot.from_sign(0)


# ---------------------------------------------------------------------------
# Local factors
# ---------------------------------------------------------------------------


class TestLocalFactors:
    @pytest.mark.parametrize("ell, N, expected", [(3, 2, "i"), (3, 1, "-i"), (5, 1, "-1")])
    def test_w_infinity(self, ell, N, expected):
        assert str(w_infinity(ell, N)) == expected

    def test_w_finite(self):
        assert w_finite(2, CurveParams(3, 2, 3, 5, 1, 2)) == -1
        assert w_finite(7, CurveParams(3, 2, 3, 5, 1, 5)) == 1
        with pytest.raises(ValueError):
            w_finite(3, CurveParams(3, 2, 3, 5, 1, 5))

    def test_prime_counted_once(self):
        assert local_factors(CurveParams(3, 2, 3, 5, 1, 4)) == {2: -1}
        assert local_factors(CurveParams(3, 2, 3, 5, 1, 70)) == {2: -1, 5: -1, 7: 1}

    @pytest.mark.parametrize(
        "delta, q", [(1, 2), (1, 5), (7, 2), (7, 11), (10, 11), (5, 2), (2, 5), (7, 13)]
    )
    def test_new_square_factor(self, delta, q):
        # a new prime q contributes Legendre(q, 3) once, whatever its exponent
        base = local_factors(CurveParams(3, 2, 3, 5, 1, delta))
        scaled = local_factors(CurveParams(3, 2, 3, 5, 1, delta * q**2))
        assert scaled[q] == legendre(q, 3)
        assert prod(scaled.values()) == prod(base.values()) * legendre(q, 3)

    def test_non_residues_flip_the_product(self):
        for q in (2, 5, 11):
            assert legendre(q, 3) == -1
            base = local_factors(CurveParams(3, 2, 3, 5, 1, 7))
            scaled = local_factors(CurveParams(3, 2, 3, 5, 1, 7 * q**2))
            assert prod(scaled.values()) == -prod(base.values())

    def test_square_factor_can_move_the_branch(self):
        # 7 -> 28 changes the unit part of a, so c and the branch change too
        jt = make_table(J22=(0, 2), J26=(0, 2))
        base = global_root_number(CurveParams(3, 2, 3, 5, 1, 7), jt, lenient=True)
        scaled = global_root_number(CurveParams(3, 2, 3, 5, 1, 28), jt, lenient=True)
        assert base.classification.branch is Branch.RAMIFIED_EQUAL
        assert scaled.classification.branch is Branch.RAMIFIED_GREATER
        assert prod(scaled.local_factors.values()) == -prod(base.local_factors.values())
        assert (base.relative, scaled.relative) == (1, -1)
        assert base.global_ == scaled.global_ == 1


# ---------------------------------------------------------------------------
# Relative root number and W_ell
# ---------------------------------------------------------------------------


class TestRelativeRootNumber:
    def test_otherwise_branch(self):
        # N = 1, a = 8 = -(1 - 9): ord c = 2 > N puts it in the trivial tail
        params = CurveParams(3, 1, 1, 1, 1, 2)
        d = value_of_a(params)
        cls = sharifi_conductor(d, 1)
        assert cls.branch is Branch.TRIVIAL_TAIL
        relative = relative_root_number(params, d, JTable(3))
        assert (relative.f_prime, relative.value) == (1, -1)
        assert str(w_ell(params, d, JTable(3))) == "-i"

    def test_otherwise_global(self):
        report = global_root_number(CurveParams(3, 1, 1, 1, 1, 2), JTable(3))
        assert report.global_ == 1
        assert report.j_usage == ()
        assert report.first_factor is FirstFactorCase.NONE

    def test_greater_branch(self, strict_table_1):
        params = CurveParams(3, 2, 3, 5, 1, 1)
        relative = relative_root_number(params, value_of_a(params), strict_table_1)
        assert (relative.f_prime, relative.value) == (2, -1)

    def test_table_3_first_column(self):
        params = CurveParams(3, 2, 6, 2, 1, 1)
        d = value_of_a(params)
        # r's t = 4 and c = -2049, so the argument is 2u mod 3
        values = {
            u: relative_root_number(params, d, make_table(J22=(1, u))).value for u in (1, 2)
        }
        assert values == {1: 1, 2: -1}

    def test_degenerate_is_diagnostic(self):
        params = CurveParams(3, 2, 3, 5, 1, 2)
        relative = relative_root_number(params, value_of_a(params), make_table(J26=(1, 1)))
        assert relative.value is DIAGNOSTIC
        assert "valuation +2" in relative.note

    def test_routes_agree(self):
        for triple in ((3, 5, 1), (3, 4, 2), (6, 2, 1)):
            for delta in (1, 2, 4, 5, 7, 8):
                params = CurveParams(3, 2, *triple, delta)
                d = value_of_a(params)
                cls = sharifi_conductor(d, 2)
                for u in (1, 2):
                    jt = make_table(J22=(0, u), J26=(0, u))
                    composed = w_ell(params, d, jt, lenient=True)
                    assert composed == closed_form_w_ell(params, d, cls, jt, lenient=True)
                    assert str(composed) in ("i", "-i")

    def test_flipped_branch_sign_is_caught(self, strict_table_1, monkeypatch):
        from fermat_root_numbers import hilbert

        params = CurveParams(3, 2, 3, 5, 1, 1)
        d = value_of_a(params)
        assert str(w_ell(params, d, strict_table_1)) == "i"
        original = hilbert.branch_multiplier
        monkeypatch.setattr(hilbert, "branch_multiplier", lambda cls, N: -original(cls, N))
        with pytest.raises(InternalInconsistency, match="routes disagree"):
            w_ell(params, d, strict_table_1)

    def test_closed_form_degenerate(self):
        params = CurveParams(3, 2, 3, 5, 1, 2)
        d = value_of_a(params)
        cls = sharifi_conductor(d, 2)
        jt = make_table(J26=(1, 1))
        with pytest.raises(DegenerateArgument) as info:
            closed_form_w_ell(params, d, cls, jt)
        assert info.value.surplus == 2
        assert str(closed_form_w_ell(params, d, cls, jt, lenient=True)) in ("i", "-i")


# ---------------------------------------------------------------------------
# Global root number
# ---------------------------------------------------------------------------


class TestGlobalRootNumber:
    def test_table_1(self, strict_table_1):
        report = global_root_number(CurveParams(3, 2, 3, 5, 1, 1), strict_table_1)
        assert report.global_ == -1
        assert report.classification.branch is Branch.RAMIFIED_GREATER
        assert report.first_factor is FirstFactorCase.WILD
        assert report.j_usage == ((2, 2),)
        assert str(report.local_infinity) == "i"

    def test_table_2_lenient(self):
        report = global_root_number(
            CurveParams(3, 2, 3, 4, 2, 4), make_table(J22=(0, 2), J26=(0, 1)), lenient=True
        )
        assert report.global_ == 1
        assert report.local_factors == {2: -1}

    def test_table_3_lenient(self):
        report = global_root_number(
            CurveParams(3, 2, 6, 2, 1, 5), make_table(J22=(0, 1), J26=(0, 2)), lenient=True
        )
        assert report.global_ == -1

    def test_diagnostic(self, strict_table_1):
        report = global_root_number(CurveParams(3, 2, 3, 5, 1, 2), strict_table_1)
        assert report.is_diagnostic
        assert report.local_ell is DIAGNOSTIC
        assert any("degenerate" in note for note in report.notes)

    def test_global_sign_is_product_of_parts(self, strict_table_1):
        report = global_root_number(CurveParams(3, 2, 3, 5, 1, 8), strict_table_1)
        sign = report.relative
        for w_p in report.local_factors.values():
            sign *= w_p
        assert report.global_ == sign


class TestPrecision:
    def test_retries_until_resolved(self):
        params = CurveParams(3, 2, 3, 5, 1, 1)
        d, _, M = resolve_decomposition(params, precision=2)
        assert M > 2
        assert d.ord_b_plus_c == 3

    def test_gives_up(self, monkeypatch):
        from fermat_root_numbers import root_numbers

        def always_short(params, M=None):
            raise PrecisionExhausted("short", M)

        monkeypatch.setattr(root_numbers, "value_of_a", always_short)
        with pytest.raises(PrecisionExhausted, match="gave up"):
            resolve_decomposition(CurveParams(3, 2, 3, 5, 1, 1), precision=4)

    def test_raised_precision_noted(self, strict_table_1):
        report = global_root_number(CurveParams(3, 2, 3, 5, 1, 1), strict_table_1, precision=2)
        assert any("precision raised" in note for note in report.notes)


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


class TestSweep:
    def test_skips_invalid_delta(self, strict_table_1, caplog):
        points = sweep(3, 2, 3, 5, 1, range(1, 9), strict_table_1)
        assert [p.delta for p in points] == list(range(1, 9))
        valid = [p.delta for p in points if p.report is not None]
        assert valid == [1, 2, 4, 5, 7, 8]
        assert "skipped delta=3" in points[2].note
        assert "Skipped 2 invalid delta values" in caplog.text

    def test_workers_keep_order(self, strict_table_1):
        serial = sweep(3, 2, 3, 5, 1, [1, 2, 4, 5, 7, 8], strict_table_1)
        threaded = sweep(3, 2, 3, 5, 1, [1, 2, 4, 5, 7, 8], strict_table_1, workers=3)
        assert [p.report.global_ for p in serial] == [p.report.global_ for p in threaded]

    def test_bad_triple(self, strict_table_1):
        points = sweep(3, 2, 3, 5, 2, [1], strict_table_1)
        assert points[0].report is None
        with pytest.raises(InvalidParams):
            CurveParams(3, 2, 3, 5, 2, 1)
