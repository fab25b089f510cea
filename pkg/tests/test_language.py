import pytest
from hypothesis import given, strategies as st

from sturmian_periods.abelian import parikh
from sturmian_periods.contfrac import abexp_formula, iter_k
from sturmian_periods.errors import HorizonTooSmall, NotAFactor
from sturmian_periods.language import (
    Weight,
    characteristic_prefix,
    classify_light_heavy,
    complete_first_return,
    factors_of_length,
    first_occurrences,
    is_factor,
    lambda_bound,
    return_structure,
    rotation_prefix,
    same_phase_return_analysis,
    singular_factor,
    standard_word_prefix,
)

from conftest import FIB, MATRIX, ctx_for, word_by_floor

FIB_PREFIX = "010010100100101001010010010100100101001010010010100101001001010010"


def test_fibonacci_prefix(fib):
    assert characteristic_prefix(fib, 66) == FIB_PREFIX


@pytest.mark.parametrize("spec", MATRIX)
def test_backends_agree_with_oracle(spec):
    ctx = ctx_for(spec)
    want = word_by_floor(spec, 400)
    assert standard_word_prefix(ctx, 400) == want
    assert rotation_prefix(ctx, 400) == want


def test_fibonacci_factors_of_length_5(fib):
    assert factors_of_length(fib, 5) == {"00100", "00101", "01001", "01010", "10010", "10100"}


@pytest.mark.parametrize("spec", MATRIX)
def test_complexity_and_balance(spec):
    ctx = ctx_for(spec)
    for n in range(1, 60):
        fs = factors_of_length(ctx, n)
        assert len(fs) == n + 1
        assert len({w.count("1") for w in fs}) == 2


def test_first_occurrences_point_at_the_word(fib):
    s = characteristic_prefix(fib, 500)
    for w, i in first_occurrences(fib, 12).items():
        assert s[i:i + 12] == w and w not in s[:i + 11]


def test_is_factor_long_words(fib):
    s = characteristic_prefix(fib, 3000)
    assert is_factor(fib, s[700:1700])
    bad = s[700:1200] + "11" + s[1202:1700]
    assert not is_factor(fib, bad)


@pytest.mark.parametrize("k, want", [(0, "1"), (1, "00"), (2, "101"), (3, "00100")])
def test_singular_factor_fibonacci(fib, k, want):
    assert singular_factor(fib, k) == want


def test_light_heavy(fib):
    assert classify_light_heavy(fib, "00100") is Weight.Light
    assert classify_light_heavy(fib, "01010") is Weight.Heavy
    with pytest.raises(NotAFactor):
        classify_light_heavy(fib, "11")


def test_return_structure(fib):
    assert return_structure(fib, "00100", 400) == {8, 13}
    assert return_structure(fib, "0", 100) == {1, 2}
    assert return_structure(fib, "1", 100) == {2, 3}
    with pytest.raises(HorizonTooSmall):
        return_structure(fib, "00100", 10)


@pytest.mark.parametrize("spec", MATRIX)
def test_singular_returns_are_q_next_and_sum(spec):
    ctx = ctx_for(spec)
    for k in iter_k(ctx, 100):
        s = singular_factor(ctx, k)
        assert return_structure(ctx, s, 40 * ctx.q(k + 2)) == {ctx.q(k + 1), ctx.q(k + 1) + ctx.q(k)}


@pytest.mark.parametrize("spec", MATRIX)
def test_singular_factor_shape(spec):
    ctx = ctx_for(spec)
    for k in iter_k(ctx, 150):
        s = singular_factor(ctx, k)
        assert s == s[::-1] and s[0] == s[-1]
        classes = {parikh(f) for f in factors_of_length(ctx, len(s))}
        for i in range(1, len(s)):
            assert all(parikh(s[:i]).within(c) and parikh(s[-i:]).within(c) for c in classes)


def test_complete_first_return():
    assert complete_first_return("010", "01010")
    assert not complete_first_return("010", "0101010")
    assert complete_first_return("00100", "0010010100100", same_phase=False)
    assert not complete_first_return("00100", "0010010100100", same_phase=True)
    with pytest.raises(ValueError):
        complete_first_return("0100", "01")


@pytest.mark.parametrize("spec", MATRIX)
def test_same_phase_return_structure(spec):
    ctx = ctx_for(spec)
    for k in iter_k(ctx, 150):
        r = same_phase_return_analysis(ctx, k)
        assert r.exponent_ok, (k, r.exponent_of_core, r.abexp)
        assert r.letters_ok


def test_same_phase_return_fibonacci(fib):
    r = same_phase_return_analysis(fib, 3)
    assert r.abexp == abexp_formula(fib, 5) == 11
    assert r.exponent_of_core in (10, 11)
    assert lambda_bound(fib, 3) >= 0


@given(st.integers(1, 80), st.integers(0, 400))
def test_factors_closed_under_reversal_and_slices(n, i):
    ctx = ctx_for(FIB)
    w = characteristic_prefix(ctx, 500)[i:i + n]
    assert is_factor(ctx, w) and is_factor(ctx, w[::-1])
    assert is_factor(ctx, w[1:]) or len(w) == 1
