from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from hyperkloosterman.core import build_context, primes_in_range
from hyperkloosterman.counts import Family, count_C1, count_closed
from hyperkloosterman.errors import TooLarge, Unsupported
from hyperkloosterman.expsums import gauss_table
from hyperkloosterman.moments import (
    MomentReport,
    ReferenceInterval,
    closed_form_reference,
    fourth_moment_direct,
    fourth_moment_exact,
    fourth_moment_uncorrected,
    gamma_total,
    second_moment,
    second_moment_stated,
    theorem_check,
    theorem_report,
)


def test_gamma_examples():
    assert gamma_total(5, 2) == 95
    assert gamma_total(5, 1) == 20
    assert gamma_total(7, 1) == 42


def test_second_moment_examples():
    ctx = build_context(5)
    assert second_moment(ctx, 1, ctx.principal).value == 19
    assert second_moment(ctx, 2, ctx.char(1)).value == 70
    assert second_moment(ctx, 2, ctx.principal).value == 94
    assert second_moment_stated(5, 2, True) == 95
    assert second_moment(ctx, 2, ctx.principal, "direct") == pytest.approx(94, abs=1e-9)
    with pytest.raises(TooLarge):
        second_moment(build_context(211), 1, build_context(211).principal, "direct")
    with pytest.raises(ValueError):
        second_moment(ctx, 1, ctx.principal, "guess")


@pytest.mark.parametrize("p, s, value", [(5, 1, 484), (5, 2, 9384), (7, 2, 107484), (13, 3, 1138572564)])
def test_fourth_moment_examples(p, s, value):
    assert fourth_moment_exact(p, s) == value
    ctx = build_context(p)
    assert fourth_moment_direct(ctx, gauss_table(ctx), s) == pytest.approx(value, rel=1e-9)


@pytest.mark.parametrize("p, s", [(5, 1), (5, 2), (7, 1)])
def test_fourth_moment_against_oracle(p, s):
    assert oracles.fourth_moment(p, s) == pytest.approx(fourth_moment_exact(p, s), rel=1e-10)


def test_assembly_worked_example():
    # (3*225 + 361 + 25*4*(4*3 - 3)) / 4
    assert count_C1(5, 1) == 3 and count_closed(Family.C2, 5, 1) == 3
    assert (3 * 225 + 361 + 25 * 4 * (4 * 3 - 3)) // 4 == fourth_moment_exact(5, 1)


def test_uncorrected_is_off():
    assert fourth_moment_uncorrected(5, 2) == Fraction(39725, 4)
    assert fourth_moment_uncorrected(5, 2) != 9384


def test_references():
    assert closed_form_reference(7, 1) == 2526
    assert closed_form_reference(5, 2) == 9384
    ref = closed_form_reference(11, 3)
    assert isinstance(ref, ReferenceInterval) and ref.main == 2 * 11**8
    assert ref.constant(fourth_moment_exact(11, 3)) < 10
    with pytest.raises(Unsupported):
        closed_form_reference(5, 4)


def test_direct_guard():
    ctx = build_context(503)
    with pytest.raises(TooLarge):
        fourth_moment_direct(ctx, gauss_table(ctx, "fast"), 1)


def test_report_fields():
    r = MomentReport.from_value(5, 1, 484)
    assert r.main == 1250 and r.error == -766
    assert r.ratio == pytest.approx(766 / 5**3.5)


def test_theorem_report_order_and_workers():
    primes = primes_in_range(5, 41)
    serial = theorem_report(2, primes, workers=1)
    parallel = theorem_report(2, primes, workers=2)
    assert serial == parallel
    assert [r.p for r in serial] == primes
    # the s=2 error term is exactly the polynomial's lower-order part
    for r in serial:
        assert r.error == closed_form_reference(r.p, 2) - 2 * r.p**6
    assert theorem_check(serial).passed


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(primes_in_range(5, 101)), st.integers(1, 3))
def test_assembly_integral_and_chi_sum(p, s):
    m4 = fourth_moment_exact(p, s)
    assert m4 > 0
    if s == 1:
        assert m4 == closed_form_reference(p, 1)
    g = gamma_total(p, s)
    ctx = build_context(p)
    total = sum(second_moment(ctx, s, chi).value for chi in ctx.characters())
    assert total == (p - 2) * (g - p**s) + (g - 1)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(primes_in_range(5, 31)), st.integers(1, 3))
def test_direct_matches_exact(p, s):
    ctx = build_context(p)
    table = gauss_table(ctx)
    assert fourth_moment_direct(ctx, table, s) == pytest.approx(fourth_moment_exact(p, s), rel=1e-9)
    for chi in ctx.characters():
        direct = second_moment(ctx, s, chi, "direct", table)
        assert abs(direct - second_moment(ctx, s, chi).value) < 1e-3
