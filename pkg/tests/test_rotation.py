from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sturmian_periods.contfrac import ALPHA, LinearForm, approx
from sturmian_periods.errors import NotAFactor
from sturmian_periods.language import factors_of_length
from sturmian_periods.rotation import (
    ORIGIN,
    EndpointConvention,
    TPoint,
    atoms,
    code_orbit,
    cut_points,
    factor_interval,
    interval_extrema,
)

from conftest import MATRIX, alpha_fraction, ctx_for, word_by_floor

IN, OUT = EndpointConvention.ZeroInI0, EndpointConvention.ZeroNotInI0


def test_fibonacci_coding_prefix(fib):
    assert code_orbit(fib, TPoint.of(fib, ALPHA), 20, IN) == "01001010010010100101"


@pytest.mark.parametrize("spec", MATRIX)
def test_coding_matches_floor_oracle(spec):
    ctx = ctx_for(spec)
    assert code_orbit(ctx, TPoint.of(ctx, ALPHA), 500, IN) == word_by_floor(spec, 500)


@given(st.sampled_from(MATRIX), st.fractions(min_value=0, max_value=1, max_denominator=97).filter(lambda r: 0 < r < 1))
def test_rational_intercepts_match_oracle(spec, r):
    # nonzero rational intercepts never hit a cut point, so both conventions agree
    ctx = ctx_for(spec)
    rho = TPoint.of(ctx, LinearForm(r, 0))
    w = code_orbit(ctx, rho, 60, IN)
    assert w == code_orbit(ctx, rho, 60, OUT)
    assert w == word_by_floor(spec, 60, rho=r)


def test_origin_conventions_differ_only_at_tie(fib):
    # 0 is the only cut on its own orbit: 0c and 1c with c the characteristic word
    a, b = code_orbit(fib, ORIGIN, 30, IN), code_orbit(fib, ORIGIN, 30, OUT)
    assert (a[0], b[0]) == ("0", "1")
    assert a[1:] == b[1:] == word_by_floor("0;2,(1)", 29)


def test_singular_interval(fib):
    arc = factor_interval(fib, "00100", IN)
    assert arc.lo == ORIGIN
    assert arc.hi == TPoint.neg_multiple(fib, 5)
    assert abs(approx(fib, arc.hi.form) - 0.0902) < 1e-4


def test_not_a_factor(fib):
    with pytest.raises(NotAFactor):
        factor_interval(fib, "0110", IN)


@pytest.mark.parametrize("spec", MATRIX)
@pytest.mark.parametrize("conv", [IN, OUT])
def test_intervals_partition_circle(spec, conv):
    ctx = ctx_for(spec)
    for n in (1, 4, 9):
        parts = atoms(ctx, n, conv)
        assert sorted(w for _, w in parts) == sorted(factors_of_length(ctx, n))
        total = sum((iv.length(ctx) for iv, _ in parts), LinearForm(Fraction(0), 0))
        assert total.is_zero() is False and ctx.sign(total - 1) == 0


@pytest.mark.parametrize("spec", MATRIX)
def test_representative_codes_its_word(spec):
    ctx = ctx_for(spec)
    for conv in (IN, OUT):
        for w in factors_of_length(ctx, 7):
            arc = factor_interval(ctx, w, conv)
            assert code_orbit(ctx, arc.representative(), 7, conv) == w
            assert arc.contains(ctx, arc.representative())


def test_cut_points_are_negative_multiples(fib):
    cuts = cut_points(fib, 4)
    assert TPoint.neg_multiple(fib, 3) in cuts and ORIGIN in cuts


def test_interval_extrema(fib):
    lo, hi = interval_extrema(fib, 2)
    assert abs(approx(fib, lo) - 0.2361) < 1e-4
    assert abs(approx(fib, hi) - 0.3820) < 1e-4
    lo, _ = interval_extrema(fib, 5)
    assert abs(approx(fib, lo) - 0.0902) < 1e-4
    assert interval_extrema(fib, 0)[0].at(alpha_fraction("0;2,(1)")) == 1


def test_convention_parse():
    assert EndpointConvention.parse("ZeroNotInI0") is OUT
    with pytest.raises(ValueError):
        EndpointConvention.parse("neither")
