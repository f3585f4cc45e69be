import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from hyperkloosterman.core import build_context, primes_in_range
from hyperkloosterman.expsums import (
    MIXED_MOMENT,
    gauss_sum,
    gauss_table,
    jacobi_sum,
    mixed_moment_sigma,
)


def test_gauss_examples():
    ctx = build_context(5)
    assert gauss_sum(ctx, ctx.principal) == pytest.approx(1)
    assert gauss_sum(ctx, ctx.char(2)) == pytest.approx(-math.sqrt(5), abs=1e-12)
    t = gauss_table(build_context(5))
    assert t[0] == pytest.approx(1) and t[2] == pytest.approx(-math.sqrt(5))
    ctx7 = build_context(7)
    for k in range(1, 6):
        assert abs(gauss_sum(ctx7, ctx7.char(k))) == pytest.approx(math.sqrt(7), abs=1e-10)


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_gauss_against_oracle(p):
    ctx = build_context(p)
    table = gauss_table(ctx)
    for k in range(p - 1):
        ref = oracles.gauss(p, k)
        assert table[k] == pytest.approx(ref, abs=1e-10)
        assert gauss_sum(ctx, ctx.char(k)) == pytest.approx(ref, abs=1e-10)


@pytest.mark.parametrize("p", [31, 97, 211])
def test_fast_matches_direct(p):
    ctx = build_context(p)
    d, f = gauss_table(ctx, "direct"), gauss_table(ctx, "fast")
    assert np.max(np.abs(np.asarray(d.values) - np.asarray(f.values))) < 1e-8


def test_unknown_method():
    ctx = build_context(5)
    with pytest.raises(ValueError):
        gauss_table(ctx, "slow")
    with pytest.raises(ValueError):
        jacobi_sum(ctx, ctx.char(1), ctx.char(1), "other")


def test_jacobi_examples():
    ctx5, ctx7 = build_context(5), build_context(7)
    assert jacobi_sum(ctx5, ctx5.principal, ctx5.principal) == pytest.approx(3)
    chi = ctx7.char(1)
    assert jacobi_sum(ctx7, chi, ctx7.principal) == pytest.approx(-1)
    assert jacobi_sum(ctx7, chi, ctx7.principal, "gauss") == -1
    assert abs(jacobi_sum(ctx7, chi, ctx7.char(2))) == pytest.approx(math.sqrt(7), abs=1e-9)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_jacobi_against_oracle(p):
    ctx = build_context(p)
    for a in range(p - 1):
        for b in range(p - 1):
            ref = oracles.jacobi(p, a, b)
            assert jacobi_sum(ctx, ctx.char(a), ctx.char(b)) == pytest.approx(ref, abs=1e-10)
            assert jacobi_sum(ctx, ctx.char(a), ctx.char(b), "gauss") == pytest.approx(ref, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(primes_in_range(5, 300)), st.data())
def test_gauss_invariants(p, data):
    ctx = build_context(p)
    table = gauss_table(ctx, "fast")
    k = data.draw(st.integers(1, p - 2))
    chi = ctx.char(k)
    assert abs(abs(table[chi]) ** 2 - p) <= 1e-9 * p
    assert abs(table[chi] * table[chi.conj()] - p * chi.at_minus_one()) <= 1e-9 * p


def test_mixed_moment_spec():
    assert MIXED_MOMENT.rank == 3
    assert MIXED_MOMENT.rows_nonproportional()
    assert MIXED_MOMENT.exponents(2) == (2, 2, -2, -2)
    assert MIXED_MOMENT.a == 4


def test_mixed_moment_examples():
    v11 = abs(mixed_moment_sigma(build_context(11), 1))
    assert v11 <= 2 / math.sqrt(11) + 5 / 11
    a, b = abs(mixed_moment_sigma(build_context(11), 2)), abs(mixed_moment_sigma(build_context(31), 2))
    assert b <= a + 0.1


def _mixed_oracle(p, s):
    """Triple loop straight from the definition."""
    n = p - 1
    G = {k: oracles.gauss(p, k) / math.sqrt(p) for k in range(n)}
    total, count = 0j, 0
    for k1 in range(n):
        for k2 in range(n):
            for k3 in range(1, n):
                if 0 in (k1 % n, k2 % n, (k1 + k3) % n, (k2 - k3) % n):
                    continue
                # chi_3(-1) twist on the first component
                tw = (-1) ** k3
                val = (tw * G[k1]) ** s * G[k2] ** s
                val *= G[(k1 + k3) % n] ** (-s) * G[(k2 - k3) % n] ** (-s)
                total += val
                count += 1
    return total / count


@pytest.mark.parametrize("p, s", [(5, 1), (7, 1), (7, 2), (11, 3)])
def test_mixed_moment_against_loop(p, s):
    assert mixed_moment_sigma(build_context(p), s) == pytest.approx(_mixed_oracle(p, s), abs=1e-12)


@pytest.mark.parametrize("p", [7, 11, 13])
def test_mixed_moment_real_for_even_s(p):
    v = mixed_moment_sigma(build_context(p), 2)
    assert abs(v.imag) <= 1e-12
    assert abs(v) <= 1
