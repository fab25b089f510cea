import itertools

import pytest
from hypothesis import given, strategies as st

from sturmian_periods.abelian import min_abelian_period
from sturmian_periods.errors import PreconditionFailed
from sturmian_periods.kabelian import (
    KTable,
    class_key,
    count_k_classes,
    generalized_parikh,
    has_sense1_period,
    k_equivalent,
    k_exponent_estimate,
    k_period_set,
    kgrams,
    left_completable,
    left_completable_brute,
    max_k_power_exponent,
    right_completable,
    right_completable_brute,
    sense1_min_period,
    sense2_min_period,
    straddle_completable,
    straddle_completable_brute,
    trail_exists,
)
from sturmian_periods.language import characteristic_prefix, factors_of_length, is_factor

from conftest import MATRIX, ctx_for

FIBS = {1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144}


def brute_k_equivalent(u, v, k):
    """Oracle: equal counts of every factor of length <= k."""
    return len(u) == len(v) and all(
        _occ(u, x) == _occ(v, x)
        for j in range(1, k + 1) for x in map("".join, itertools.product("01", repeat=j))
    )


def _occ(w, x):
    return sum(w.startswith(x, i) for i in range(len(w)))


@given(st.text("01", min_size=0, max_size=12), st.text("01", min_size=0, max_size=12), st.integers(1, 5))
def test_k_equivalence_matches_oracle(u, v, k):
    if len(u) != len(v):
        v = (v + u)[:len(u)]
    assert k_equivalent(u, v, k) == brute_k_equivalent(u, v, k)


def test_k_equivalence_pins():
    assert k_equivalent("0110", "1001", 1)
    assert not k_equivalent("0110", "1001", 2)
    assert k_equivalent("010011", "011001", 2)
    assert not k_equivalent("010", "100", 2)


def test_generalized_parikh_layout():
    assert generalized_parikh("0110", 2) == (2, 2, 0, 1, 1, 1)


@pytest.mark.parametrize("spec", MATRIX)
def test_class_count_law(spec):
    ctx = ctx_for(spec)
    for k in range(1, 6):
        for n in range(1, 41):
            want = n + 1 if n <= 2 * k - 1 else 2 * k
            assert count_k_classes(ctx, n, k) == want


def test_class_count_pins(fib):
    assert count_k_classes(fib, 10, 2) == 4
    assert count_k_classes(fib, 2, 2) == 3
    assert count_k_classes(ctx_for("0;2,1,2,3,(1)"), 12, 3) == 6


def test_trail_exists():
    assert trail_exists(kgrams("0110", 2), "0", "0")
    assert not trail_exists(kgrams("0110", 2), "1", "0")


@given(st.text("01", min_size=2, max_size=12), st.integers(0, 12), st.integers(1, 4))
def test_completability_matches_brute(block, h, k):
    # pads up to 12 letters
    h = h % (len(block) + 1)
    for frag in {block[len(block) - h:], block[:h], ("01" * 7)[:h]}:
        assert left_completable(frag, block, k) == left_completable_brute(frag, block, k)
        assert right_completable(frag, block, k) == right_completable_brute(frag, block, k)


@given(st.text("01", min_size=2, max_size=14), st.integers(2, 9), st.integers(1, 4), st.integers(0, 20))
def test_straddle_matches_brute(w, m, k, cut):
    w = w[:2 * m - 2] if len(w) > 2 * m - 2 else w
    if len(w) < 2:
        return
    h = 1 + cut % (len(w) - 1)
    head, tail = w[:h], w[h:]
    if len(head) >= m or len(tail) >= m:
        return
    assert straddle_completable(head, tail, m, k) == straddle_completable_brute(head, tail, m, k)


@given(st.text("01", min_size=1, max_size=11), st.integers(1, 4))
def test_sense1_matches_brute(w, k):
    assert sense1_min_period(w, k) == sense1_min_period(w, k, brute=True)


@given(st.text("01", min_size=1, max_size=30))
def test_sense1_with_k1_is_abelian(w):
    assert sense1_min_period(w, 1) == min_abelian_period(w)


@given(st.text("01", min_size=1, max_size=24), st.integers(1, 4))
def test_k_period_bounds(w, k):
    ab = min_abelian_period(w)
    assert ab <= sense1_min_period(w, k) <= len(w)
    assert sense1_min_period(w, k) <= sense1_min_period(w, k + 1)


def test_k_period_pins():
    assert min_abelian_period("0100110") == 2
    assert sense1_min_period("0100110", 2) == 6
    assert sense2_min_period("0100110", 2) == 4
    assert sense1_min_period("010010100", 2) == 5
    assert sense1_min_period("010010100", 2, brute=True) == 5


def test_seven_abelian_sixteen(fib):
    w = "01001001010010010100101"
    assert is_factor(fib, w)
    assert sense1_min_period(w, 7) == 16
    assert has_sense1_period(w, 16, 7) and not has_sense1_period(w, 13, 7)


def test_fibonacci_sense2_sets(fib):
    assert k_period_set(fib, 200, 2, 2)[0] == {1, 2, 3, 4, 5, 8, 13, 21}
    assert k_period_set(fib, 200, 3, 2)[0] == {1, 2, 3, 5, 6, 7, 8, 10, 13, 21}


def test_fibonacci_sense1_sets(fib):
    for k in (2, 3):
        values, witness = k_period_set(fib, 80, k, 1)
        assert values <= FIBS
        assert all(sense1_min_period(witness[m], k) == m for m in values)


@pytest.mark.parametrize("sense", [1, 2])
def test_sweep_agrees_with_single_word(sense):
    ctx = ctx_for("0;2,1,2,3,(1)")
    fn = sense1_min_period if sense == 1 else sense2_min_period
    table = KTable(ctx, 18, 2)
    for n in (5, 11, 18):
        got = table.sense1(n) if sense == 1 else table.sense2(n)
        assert got == {w: fn(w, 2) for w in factors_of_length(ctx, n)}


def test_k_exponent_estimate(fib):
    est, scanned = k_exponent_estimate(fib, 5, 2)
    assert (est, scanned) == (4, 5)
    assert abs(est - scanned) <= 1
    with pytest.raises(PreconditionFailed):
        k_exponent_estimate(fib, 2, 2)


def test_k_exponent_estimate_k1_is_abelian(fib):
    assert k_exponent_estimate(fib, 5, 1)[0] == 11


def test_max_k_power_exponent(fib):
    s = characteristic_prefix(fib, 2000)
    assert max_k_power_exponent(s, 5, 1) == 11
    assert max_k_power_exponent("0101010", 2, 2) == 3


def test_class_key_short_words():
    assert class_key("01", 3) == class_key("01", 3)
    assert class_key("01", 3) != class_key("10", 3)
