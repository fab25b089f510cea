"""The factor language of a slope: prefixes, factors, singular factors, returns."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .contfrac import LinearForm, SlopeContext, abexp_formula
from .errors import (
    BackendMismatch,
    EnumerationCapExceeded,
    HorizonTooSmall,
    NotAFactor,
)
from .rotation import ORIGIN, EndpointConvention, TPoint, code_orbit, factor_interval


def standard_word_prefix(ctx: SlopeContext, length: int) -> str:
    """Prefix of the characteristic word via s_k = s_{k-1}^{a_k} s_{k-2}."""
    prev, cur = "0", "0" * (ctx.a(1) - 1) + "1"
    k = 1
    while len(cur) < length:
        k += 1
        prev, cur = cur, cur * ctx.a(k) + prev
    return cur[:length]


def rotation_prefix(ctx: SlopeContext, length: int) -> str:
    """Prefix of s_{alpha,alpha} by coding the orbit of alpha."""
    rho = TPoint.of(ctx, LinearForm(Fraction(0), 1))
    return code_orbit(ctx, rho, length, EndpointConvention.ZeroInI0)


def characteristic_prefix(ctx: SlopeContext, length: int) -> str:
    """Prefix of s_{alpha,alpha} of the given length, cross-checked across two backends."""
    if length < 0:
        raise ValueError("length must be >= 0")
    cached = ctx.memo.get("prefix", "")
    if len(cached) >= length:
        return cached[:length]
    # grow geometrically so repeated calls stay cheap
    target = max(length, 2 * len(cached), 64)
    a = rotation_prefix(ctx, target)
    b = standard_word_prefix(ctx, target)
    if a != b:
        i = next(i for i in range(target) if a[i] != b[i])
        raise BackendMismatch(f"prefix backends disagree at position {i} for {ctx.spec}")
    ctx.memo["prefix"] = a
    return a[:length]


def factors_of_length(ctx: SlopeContext, n: int) -> frozenset[str]:
    """The n+1 factors of length n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cache = ctx.memo.setdefault("factors", {})
    if n in cache:
        return cache[n]
    cap = 64 * (n + 1)
    horizon = min(4 * (n + 1), cap)
    while True:
        s = characteristic_prefix(ctx, horizon)
        found = {s[i:i + n] for i in range(horizon - n + 1)}
        if len(found) == n + 1:
            break
        if len(found) > n + 1:
            raise EnumerationCapExceeded(f"more than {n + 1} factors of length {n}: not Sturmian")
        if horizon >= cap:
            raise EnumerationCapExceeded(
                f"found {len(found)} of {n + 1} factors of length {n} within {cap} letters"
            )
        horizon = min(2 * horizon, cap)
    cache[n] = frozenset(found)
    return cache[n]


def first_occurrences(ctx: SlopeContext, n: int) -> dict[str, int]:
    """Each factor of length n mapped to its first position in the characteristic word."""
    cache = ctx.memo.setdefault("first_occ", {})
    if n in cache:
        return cache[n]
    want = factors_of_length(ctx, n)
    horizon = 4 * (n + 1)
    while True:
        s = characteristic_prefix(ctx, horizon)
        pos: dict[str, int] = {}
        for i in range(horizon - n + 1):
            pos.setdefault(s[i:i + n], i)
        if len(pos) == len(want):
            break
        horizon *= 2
    cache[n] = pos
    return pos


def is_factor(ctx: SlopeContext, w: str) -> bool:
    if not w:
        return True
    if len(w) <= 256:
        return w in factors_of_length(ctx, len(w))
    # long words: look in a prefix, then settle it exactly on the circle
    if w in characteristic_prefix(ctx, 8 * (len(w) + 1)):
        return True
    try:
        factor_interval(ctx, w, EndpointConvention.ZeroInI0)
    except NotAFactor:
        return False
    return True


def require_factor(ctx: SlopeContext, w: str) -> None:
    if not w or not is_factor(ctx, w):
        raise NotAFactor(f"{w!r} is not a factor of slope {ctx.spec}")


def singular_factor(ctx: SlopeContext, k: int) -> str:
    """The factor of length q_k alone in its abelian class."""
    if k < 0:
        raise ValueError("k must be >= 0")
    q = ctx.q(k)
    if q == 1:
        # both letters are Parikh singletons; the singular one is the rarer letter
        return "1"
    by_ones: dict[int, list[str]] = {}
    for f in factors_of_length(ctx, q):
        by_ones.setdefault(f.count("1"), []).append(f)
    lone = [ws[0] for ws in by_ones.values() if len(ws) == 1]
    if len(lone) != 1:
        raise AssertionError(f"no unique Parikh singleton among length-{q} factors")
    s = lone[0]
    # secondary check: [s] has endpoints 0 and {-q_k alpha}
    arc = factor_interval(ctx, s, EndpointConvention.ZeroInI0)
    if {arc.lo, arc.hi} != {ORIGIN, TPoint.neg_multiple(ctx, q)}:
        raise AssertionError(f"interval of singular factor {s!r} has unexpected endpoints")
    return s


class Weight(enum.Enum):
    Light = "light"
    Heavy = "heavy"


def classify_light_heavy(ctx: SlopeContext, w: str) -> Weight:
    require_factor(ctx, w)
    least = min(f.count("1") for f in factors_of_length(ctx, len(w)))
    return Weight.Light if w.count("1") == least else Weight.Heavy


def occurrences(pattern: str, text: str) -> list[int]:
    out, i = [], text.find(pattern)
    while i >= 0:
        out.append(i)
        i = text.find(pattern, i + 1)
    return out


def return_structure(ctx: SlopeContext, w: str, horizon: int) -> set[int]:
    """Gaps between consecutive occurrences of w in a prefix of the given length."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    require_factor(ctx, w)
    occ = occurrences(w, characteristic_prefix(ctx, horizon))
    if len(occ) < 3:
        raise HorizonTooSmall(f"only {len(occ)} occurrences of {w!r} within {horizon} letters")
    return {b - a for a, b in zip(occ, occ[1:])}


def complete_first_return(w: str, u: str, same_phase: bool = False) -> bool:
    """Is u a complete first return to w (optionally in the same phase)?"""
    if not w or len(u) < len(w):
        raise ValueError("need |u| >= |w| >= 1")
    if not (u.startswith(w) and u.endswith(w)):
        return False
    occ = occurrences(w, u)
    if not same_phase:
        return len(occ) == 2
    n = len(w)
    if len(u) % n or len(occ) < 2:
        return False
    return all(i in (0, len(u) - n) for i in occ if i % n == 0)


@dataclass
class ReturnAnalysis:
    k: int
    word: str
    exponent_of_core: int
    core_is_power: bool
    leading_same_last: int
    trailing_same_first: int
    lambda_bound: int
    common_bound: int
    abexp: int

    @property
    def exponent_ok(self) -> bool:
        return self.core_is_power and self.exponent_of_core in (self.abexp - 1, self.abexp)

    @property
    def letters_ok(self) -> bool:
        if self.k == 0:
            return True
        lo = max(self.lambda_bound, self.common_bound)
        return min(self.leading_same_last, self.trailing_same_first) >= lo


def lambda_bound(ctx: SlopeContext, k: int) -> int:
    p, q = ctx.cf.pq(k + 1)
    return q - p - 1 if k % 2 else p - 1


def same_phase_returns(ctx: SlopeContext, k: int, horizon: int, limit: int | None = None) -> list[str]:
    """Complete first returns in the same phase to the singular factor of length q_k."""
    s = singular_factor(ctx, k)
    q = len(s)
    text = characteristic_prefix(ctx, horizon)
    occ = occurrences(s, text)
    out = []
    for idx, i in enumerate(occ):
        for j in occ[idx + 1:]:
            if (j - i) % q == 0:
                out.append(text[i:j + q])
                break
        if limit is not None and len(out) >= limit:
            break
    return out


def analyse_return(ctx: SlopeContext, k: int, u: str) -> ReturnAnalysis:
    s = singular_factor(ctx, k)
    q = len(s)
    if not complete_first_return(s, u, same_phase=True):
        raise ValueError("sample is not a same-phase complete first return to the singular factor")
    core = u[q:len(u) - q]
    blocks = [core[i:i + q] for i in range(0, len(core), q)]
    weights = {b.count("1") for b in blocks}
    letter = s[0]
    lead = 0
    while lead < len(blocks) and blocks[lead][-1] == letter:
        lead += 1
    trail = 0
    while trail < len(blocks) and blocks[-1 - trail][0] == letter:
        trail += 1
    return ReturnAnalysis(
        k=k,
        word=u,
        exponent_of_core=len(blocks),
        core_is_power=len(weights) <= 1,
        leading_same_last=lead,
        trailing_same_first=trail,
        lambda_bound=lambda_bound(ctx, k),
        common_bound=ctx.p(k + 1) - 1,
        abexp=abexp_formula(ctx, q),
    )


def same_phase_return_analysis(ctx: SlopeContext, k: int, sample: str | None = None) -> ReturnAnalysis:
    """Block structure of a same-phase complete first return to the q_k singular factor."""
    if sample is not None:
        return analyse_return(ctx, k, sample)
    q = ctx.q(k)
    horizon = (abexp_formula(ctx, q) + 3) * q * 4
    for _ in range(6):
        found = same_phase_returns(ctx, k, horizon, limit=1)
        if found:
            return analyse_return(ctx, k, found[0])
        horizon *= 2
    raise HorizonTooSmall(f"no same-phase return to the singular factor of length {q}")
