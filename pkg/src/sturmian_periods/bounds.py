"""Exponent lemmas as certified predicates and the main inequality on candidate periods."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .contfrac import SlopeContext, abexp_formula, denominator_sets, norm_multiple, theta


@dataclass(frozen=True)
class PeriodLocation:
    m: int
    k: int
    t: int


def locate(ctx: SlopeContext, m: int) -> PeriodLocation:
    """k is the largest index with q_k <= m, t the largest t <= a_{k+1} with t*q_k <= m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    k = 0
    while ctx.q(k + 1) <= m:
        k += 1
    return PeriodLocation(m, k, min(m // ctx.q(k), ctx.a(k + 1)))


@dataclass
class LemmaOutcome:
    k: int
    hypothesis: bool
    conclusion: bool | None = None

    @property
    def ok(self) -> bool:
        return not self.hypothesis or bool(self.conclusion)


@dataclass
class InequalityReport:
    location: PeriodLocation
    abexp: int
    lhs: int
    rhs: int
    lemmas: dict[str, LemmaOutcome] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def _norm(ctx, m):
    return norm_multiple(ctx, m)[1]


def norm_gap_bound(ctx: SlopeContext, m: int, k: int, e: int | None = None) -> LemmaOutcome:
    """||m a|| >= ||q_{k-1} a|| + ||q_k a||  implies  AE(m) < q_k."""
    if k < 1:
        return LemmaOutcome(k, False)
    hyp = ctx.sign(_norm(ctx, m) - theta(ctx, k - 1) - theta(ctx, k)) >= 0
    if not hyp:
        return LemmaOutcome(k, False)
    e = abexp_formula(ctx, m) if e is None else e
    return LemmaOutcome(k, True, e < ctx.q(k))


def exponent_gap_bound(ctx: SlopeContext, m: int, k: int, e: int | None = None) -> LemmaOutcome:
    """||m a|| >= ||q_{k-1} a|| + (a_{k+1}+1)||q_k a||  implies  AE(m) < q_k - 1 (k >= 2)."""
    if k < 2:
        return LemmaOutcome(k, False)
    bound = theta(ctx, k - 1) + (ctx.a(k + 1) + 1) * theta(ctx, k)
    if ctx.sign(_norm(ctx, m) - bound) < 0:
        return LemmaOutcome(k, False)
    e = abexp_formula(ctx, m) if e is None else e
    return LemmaOutcome(k, True, e < ctx.q(k) - 1)


def range_bound(ctx: SlopeContext, m: int, k: int) -> LemmaOutcome:
    """a_{k+1} q_k < m < q_{k+1} (minus two exceptions) implies the hypothesis of exponent_gap_bound."""
    if k < 1:
        return LemmaOutcome(k, False)
    a = ctx.a(k + 1)
    q, q1 = ctx.q(k), ctx.q(k - 1)
    hyp = a * q < m < ctx.q(k + 1) and m != (a - 1) * q + q1
    if ctx.a(k) == 1 and m == (a - 1) * q + 2 * q1:
        hyp = False
    if not hyp:
        return LemmaOutcome(k, False)
    bound = theta(ctx, k - 1) + (a + 1) * theta(ctx, k)
    return LemmaOutcome(k, True, ctx.sign(_norm(ctx, m) - bound) >= 0)


def near_norm_bounds(ctx: SlopeContext, m: int, k: int, e: int | None = None) -> dict[str, LemmaOutcome]:
    """||m a|| <= ||q_k a|| gives AE(m) >= q_{k+1}; ||m a|| >= ||q_k a|| gives AE(m) < q_{k+1} + q_k."""
    s = ctx.sign(_norm(ctx, m) - theta(ctx, k))
    e = abexp_formula(ctx, m) if e is None else e
    lo = LemmaOutcome(k, s <= 0, e >= ctx.q(k + 1) if s <= 0 else None)
    hi = LemmaOutcome(k, s >= 0, e < ctx.q(k + 1) + ctx.q(k) if s >= 0 else None)
    return {"near_norm_lower": lo, "near_norm_upper": hi}


def exponent_bounds(ctx: SlopeContext, m: int, k: int | None = None) -> dict[str, LemmaOutcome]:
    """All exponent bounds evaluated at k (default: the located k of m)."""
    k = locate(ctx, m).k if k is None else k
    e = abexp_formula(ctx, m)
    out = {
        "norm_gap_bound": norm_gap_bound(ctx, m, k, e),
        "exponent_gap_bound": exponent_gap_bound(ctx, m, k, e),
        "range_bound": range_bound(ctx, m, k),
    }
    out.update(near_norm_bounds(ctx, m, k, e))
    return out


def main_inequality(ctx: SlopeContext, m: int) -> InequalityReport:
    """Both sides of (q_{k+1} + 2t - 1) q_k - q_{k+1} <= (AE(m) + 2) m - 2."""
    loc = locate(ctx, m)
    q, qn = ctx.q(loc.k), ctx.q(loc.k + 1)
    e = abexp_formula(ctx, m)
    lhs = (qn + 2 * loc.t - 1) * q - qn
    rhs = (e + 2) * m - 2
    return InequalityReport(loc, e, lhs, rhs, exponent_bounds(ctx, m, loc.k))


class Verdict(enum.Enum):
    InQkl = "in-Qkl"
    InM = "in-M"
    ExcludedByTheorem = "excluded"


def admissible_periods(ctx: SlopeContext, up_to: int) -> dict[int, Verdict]:
    """Which m <= N may occur as a minimum abelian period."""
    sets = denominator_sets(ctx, up_to)
    out = {}
    for m in range(1, up_to + 1):
        if m in sets.m:
            out[m] = Verdict.InM
        elif m in sets.qkl:
            out[m] = Verdict.InQkl
        else:
            out[m] = Verdict.ExcludedByTheorem
    return out
