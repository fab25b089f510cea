"""Parikh vectors, abelian decompositions and minimum (abelian) periods."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .contfrac import SlopeContext, abexp_formula
from .errors import FormulaExceeded, HorizonTooSmall, PreconditionFailed
from .language import (
    characteristic_prefix,
    first_occurrences,
    same_phase_returns,
)
from .rotation import ORIGIN, EndpointConvention, code_orbit
from .scan import WindowIndex, block_period_search


class ParikhVector(NamedTuple):
    zeros: int
    ones: int

    def within(self, other: ParikhVector) -> bool:
        """Componentwise <= and different."""
        return self.zeros <= other.zeros and self.ones <= other.ones and self != other


def parikh(w: str) -> ParikhVector:
    ones = w.count("1")
    return ParikhVector(len(w) - ones, ones)


@dataclass(frozen=True)
class AbelianDecomposition:
    word: str
    head_len: int
    block_len: int
    block_count: int

    @property
    def tail_len(self) -> int:
        return len(self.word) - self.head_len - self.block_len * self.block_count

    @property
    def head(self) -> str:
        return self.word[:self.head_len]

    @property
    def tail(self) -> str:
        return self.word[len(self.word) - self.tail_len:]

    @property
    def blocks(self) -> list[str]:
        h, m = self.head_len, self.block_len
        return [self.word[h + i * m:h + (i + 1) * m] for i in range(self.block_count)]

    def __str__(self) -> str:
        return "·".join([self.head or "ε", *self.blocks, self.tail or "ε"])


def has_abelian_period(w: str, m: int) -> AbelianDecomposition | None:
    """A decomposition of w with abelian period m, or None."""
    n = len(w)
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= |w|")
    ones = [0]
    for ch in w:
        ones.append(ones[-1] + (ch == "1"))
    for h in range(min(m - 1, n - m) + 1):
        count = (n - h) // m
        t = n - h - count * m
        c = ones[h + m] - ones[h]
        if any(ones[h + (i + 1) * m] - ones[h + i * m] != c for i in range(1, count)):
            continue
        hw = ones[h]
        tw = ones[n] - ones[n - t]
        if hw <= c and h - hw <= m - c and tw <= c and t - tw <= m - c:
            return AbelianDecomposition(w, h, m, count)
    return None


def min_abelian_period_naive(w: str) -> int:
    return next(m for m in range(1, len(w) + 1) if has_abelian_period(w, m))


def abelian_fragments(index: WindowIndex):
    def check(m, h, K, t, p, a):
        c = index.weights(m)[a]
        ok = index.parikh_within(p, h, c, m)
        return ok & index.parikh_within(a + K * m, t, c, m)

    return check


def min_abelian_period(w: str) -> int:
    """Least abelian period of a nonempty word."""
    if not w:
        raise ValueError("word must be nonempty")
    index = WindowIndex(w)
    return int(block_period_search(index, np.array([0]), len(w), 1, abelian_fragments(index))[0])


def min_period(w: str) -> int:
    """Least ordinary period, from the failure function."""
    if not w:
        raise ValueError("word must be nonempty")
    fail = [0] * len(w)
    j = 0
    for i in range(1, len(w)):
        while j and w[i] != w[j]:
            j = fail[j - 1]
        if w[i] == w[j]:
            j += 1
        fail[i] = j
    return len(w) - fail[-1]


class FactorTable:
    """All factors of length <= L, each pinned to one occurrence in a shared prefix."""

    def __init__(self, ctx: SlopeContext, max_len: int):
        if max_len < 1:
            raise ValueError("length must be >= 1")
        self.ctx = ctx
        self.max_len = max_len
        last = first_occurrences(ctx, max_len)
        horizon = max(last.values()) + max_len
        self.text = characteristic_prefix(ctx, horizon)
        self.index = WindowIndex(self.text)
        self._rows: dict[int, tuple[list[str], np.ndarray]] = {}

    def factors(self, n: int) -> tuple[list[str], np.ndarray]:
        if n not in self._rows:
            occ = first_occurrences(self.ctx, n)
            words = sorted(occ)
            self._rows[n] = (words, np.array([occ[w] for w in words], np.int64))
        return self._rows[n]

    def abelian_periods(self, n: int) -> dict[str, int]:
        words, pos = self.factors(n)
        mu = block_period_search(self.index, pos, n, 1, abelian_fragments(self.index))
        return dict(zip(words, mu.tolist()))

    def ordinary_periods(self, n: int) -> dict[str, int]:
        return {w: min_period(w) for w in self.factors(n)[0]}


def factor_table(ctx: SlopeContext, max_len: int) -> FactorTable:
    cache = ctx.memo.setdefault("tables", {})
    for size, table in cache.items():
        if size >= max_len:
            return table
    cache[max_len] = FactorTable(ctx, max_len)
    return cache[max_len]


@dataclass
class PeriodSet:
    values: set[int]
    by_length: dict[int, Counter]
    witness: dict[int, str]

    def __iter__(self):
        return iter((self.values, self.by_length))


def _period_set(ctx: SlopeContext, max_len: int, which: str, lengths=None) -> PeriodSet:
    table = factor_table(ctx, max_len)
    values, by_length, witness = set(), {}, {}
    for n in lengths or range(1, max_len + 1):
        per = table.abelian_periods(n) if which == "abelian" else table.ordinary_periods(n)
        by_length[n] = Counter(per.values())
        for w, mu in sorted(per.items()):
            if mu not in values:
                values.add(mu)
                witness[mu] = w
    return PeriodSet(values, by_length, witness)


def abelian_period_set(ctx: SlopeContext, max_len: int) -> PeriodSet:
    """Minimum abelian periods of all factors of length <= max_len."""
    return _period_set(ctx, max_len, "abelian")


def ordinary_period_set(ctx: SlopeContext, max_len: int) -> PeriodSet:
    """Minimum ordinary periods of all factors of length <= max_len."""
    return _period_set(ctx, max_len, "ordinary")


def currie_saari_set(ctx: SlopeContext, up_to: int) -> set[int]:
    """{l*q_k + q_{k-1} : k >= 0, 1 <= l <= a_{k+1}} below a bound."""
    out = set()
    k = 0
    while ctx.q(k) <= up_to:
        for ell in range(1, ctx.a(k + 1) + 1):
            v = ell * ctx.q(k) + ctx.q(k - 1)
            if v <= up_to:
                out.add(v)
        k += 1
    return out


def longest_equal_run(values: np.ndarray) -> int:
    if len(values) == 0:
        return 0
    cuts = np.nonzero(np.diff(values) != 0)[0]
    edges = np.concatenate([[-1], cuts, [len(values) - 1]])
    return int(np.diff(edges).max())


def max_abelian_exponent_scan(ctx: SlopeContext, m: int, horizon_start: int = 256, max_horizon: int = 1 << 22) -> int:
    """Largest exponent of an abelian power of period m seen in a growing prefix."""
    if m < 1:
        raise ValueError("m must be >= 1")
    target = abexp_formula(ctx, m)
    horizon = max(horizon_start, 2 * m)
    while True:
        w = WindowIndex(characteristic_prefix(ctx, horizon)).weights(m)
        best = max(longest_equal_run(w[r::m]) for r in range(m))
        if best > target:
            raise FormulaExceeded(f"exponent {best} of period {m} exceeds formula value {target}")
        if best == target:
            return best
        if horizon >= max_horizon:
            raise HorizonTooSmall(f"exponent {target} of period {m} not seen within {horizon} letters")
        horizon *= 2


def qk_witness(ctx: SlopeContext, k: int) -> str:
    """A factor with minimum abelian period exactly q_k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return "0"
    q = ctx.q(k)
    conv = EndpointConvention.ZeroInI0 if k % 2 == 0 else EndpointConvention.ZeroNotInI0
    return code_orbit(ctx, ORIGIN, abexp_formula(ctx, q) * q, conv)


def counterexample_witness(ctx: SlopeContext, k: int) -> str:
    """A factor whose minimum abelian period is q_k + q_{k-1} or 2*q_k (needs a_{k+1} > 1)."""
    if k < 1:
        raise PreconditionFailed("k must be >= 1")
    if ctx.a(k + 1) == 1:
        raise PreconditionFailed(f"a_{k + 1} = 1 for {ctx.spec}")
    q = ctx.q(k)
    horizon = (abexp_formula(ctx, q) + 3) * q * 4
    for _ in range(6):
        found = same_phase_returns(ctx, k, horizon, limit=1)
        if found:
            return found[0][:-1]
        horizon *= 2
    raise HorizonTooSmall(f"no same-phase return to the singular factor of length {q}")
