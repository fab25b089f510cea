"""Eventually periodic continued fractions and exact arithmetic on a + b*alpha.

Every real comparison in the package goes through :func:`sign_of`, which
brackets alpha between consecutive convergents and refines until the sign of
the linear form is certain. Nothing here ever touches a float.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import InsufficientExpansion, SlopeNormalizationError, SlopeParseError

DEFAULT_MAX_TERMS = 64


@dataclass(frozen=True)
class SlopeSpec:
    """[a0; head..., (tail...)] with the tail repeated forever."""

    head: tuple[int, ...]
    tail: tuple[int, ...] | None = None
    a0: int = 0

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(int(a) for a in self.head))
        if self.tail is not None:
            object.__setattr__(self, "tail", tuple(int(a) for a in self.tail))
            if not self.tail:
                raise ValueError("periodic tail must be nonempty")
        if not self.head and self.tail is None:
            raise ValueError("expansion has no partial quotients")
        if any(a < 1 for a in self.head + (self.tail or ())):
            raise ValueError("partial quotients must be positive")

    @property
    def periodic(self) -> bool:
        return self.tail is not None

    def term(self, i: int) -> int | None:
        """Partial quotient a_i, or None past the end of a finite expansion."""
        if i == 0:
            return self.a0
        if i <= len(self.head):
            return self.head[i - 1]
        if self.tail is None:
            return None
        return self.tail[(i - 1 - len(self.head)) % len(self.tail)]

    def shifted(self, t: int) -> SlopeSpec:
        """The expansion [a_t; a_{t+1}, ...] of the complete quotient alpha_t."""
        if t < 1:
            raise ValueError("shift must be >= 1")
        a_t = self.term(t)
        if a_t is None:
            raise InsufficientExpansion(f"a_{t} is not known for {self}")
        if t < len(self.head):
            return SlopeSpec(self.head[t:], self.tail, a_t)
        if self.tail is None:
            raise InsufficientExpansion(f"no partial quotients after a_{t} in {self}")
        r = (t - len(self.head)) % len(self.tail)
        return SlopeSpec((), self.tail[r:] + self.tail[:r], a_t)

    def __str__(self) -> str:
        body = ",".join(map(str, self.head))
        if self.tail is not None:
            per = "(" + ",".join(map(str, self.tail)) + ")"
            body = f"{body},{per}" if body else per
        return f"{self.a0};{body}"


def parse_slope(text: str) -> SlopeSpec:
    """Parse ``0;2,(1)`` style expansions. Whitespace and outer brackets are ignored."""
    toks: list[tuple[str, int]] = [(ch, i) for i, ch in enumerate(text) if not ch.isspace()]
    if toks and toks[0][0] == "[":
        if toks[-1][0] != "]":
            raise SlopeParseError("unbalanced '['", text, toks[0][1])
        toks = toks[1:-1]
    pos = 0

    def peek() -> tuple[str, int]:
        return toks[pos] if pos < len(toks) else ("", len(text))

    def number() -> int:
        nonlocal pos
        start = peek()[1]
        digits = ""
        while pos < len(toks) and toks[pos][0].isdigit():
            digits += toks[pos][0]
            pos += 1
        if not digits:
            raise SlopeParseError("expected a number", text, start)
        return int(digits)

    def expect(ch: str) -> None:
        nonlocal pos
        got, where = peek()
        if got != ch:
            raise SlopeParseError(f"expected {ch!r}", text, where)
        pos += 1

    a0 = number()
    expect(";")
    head: list[int] = []
    tail: list[int] | None = None
    while True:
        ch, where = peek()
        if ch == "(":
            pos += 1
            tail = [number()]
            while peek()[0] == ",":
                pos += 1
                tail.append(number())
            expect(")")
            break
        q = number()
        if q < 1:
            raise SlopeParseError("partial quotients must be positive", text, where)
        head.append(q)
        if peek()[0] != ",":
            break
        pos += 1
    if pos != len(toks):
        raise SlopeParseError("unexpected trailing input", text, peek()[1])
    if tail is not None and any(a < 1 for a in tail):
        raise SlopeParseError("partial quotients must be positive", text, where)
    return SlopeSpec(tuple(head), tuple(tail) if tail is not None else None, a0)


class Convergents:
    """Grow-only cache of p_k, q_k for an expansion (any a0).

    Lists are only ever appended to under a lock, so concurrent readers see a
    consistent prefix.
    """

    def __init__(self, spec: SlopeSpec, max_terms: int = DEFAULT_MAX_TERMS):
        self.spec = spec
        self.max_terms = max_terms
        # index k + 2 holds p_k, q_k; seeds are p_{-2}=0, p_{-1}=1, q_{-2}=1, q_{-1}=0
        self._p = [0, 1]
        self._q = [1, 0]
        self._lock = threading.Lock()
        self.deepest = -1

    def _grow(self, k: int) -> None:
        with self._lock:
            while len(self._p) - 2 <= k:
                i = len(self._p) - 2
                a = self.spec.term(i)
                if a is None:
                    raise InsufficientExpansion(f"{self.spec} has no partial quotient a_{i}")
                if i > self.max_terms:
                    raise InsufficientExpansion(
                        f"refinement past {self.max_terms} partial quotients for {self.spec}"
                    )
                self._p.append(a * self._p[-1] + self._p[-2])
                self._q.append(a * self._q[-1] + self._q[-2])

    def pq(self, k: int) -> tuple[int, int]:
        if k < -2:
            raise IndexError(k)
        if len(self._p) - 2 <= k:
            self._grow(k)
        if k > self.deepest:
            self.deepest = k
        return self._p[k + 2], self._q[k + 2]

    def bracket(self, j: int) -> tuple[int, int, int, int]:
        """(p, q) of convergents 2j and 2j+1; alpha lies strictly between them."""
        p0, q0 = self.pq(2 * j)
        p1, q1 = self.pq(2 * j + 1)
        return p0, q0, p1, q1

    def interval(self, j: int) -> RatInterval:
        p0, q0, p1, q1 = self.bracket(j)
        return RatInterval(Fraction(p0, q0), Fraction(p1, q1))


@dataclass(frozen=True)
class LinearForm:
    """The real number a + b*alpha with a rational and b an integer."""

    a: Fraction
    b: int

    def __post_init__(self):
        if not isinstance(self.a, Fraction):
            object.__setattr__(self, "a", Fraction(self.a))
        if isinstance(self.b, Fraction):
            if self.b.denominator != 1:
                raise ValueError("alpha coefficient must be an integer")
            object.__setattr__(self, "b", int(self.b))

    def __add__(self, other):
        if isinstance(other, LinearForm):
            return LinearForm(self.a + other.a, self.b + other.b)
        return LinearForm(self.a + other, self.b)

    __radd__ = __add__

    def __neg__(self):
        return LinearForm(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("linear forms scale by integers only")
        return LinearForm(self.a * n, self.b * n)

    __rmul__ = __mul__

    def at(self, x: Fraction) -> Fraction:
        return self.a + self.b * x

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self) -> str:
        return f"{self.a} + {self.b}α"


ZERO = LinearForm(Fraction(0), 0)
ONE = LinearForm(Fraction(1), 0)
ALPHA = LinearForm(Fraction(0), 1)


class RatInterval:
    """Closed rational interval with the handful of operations the identity checks need."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo, hi = Fraction(lo), Fraction(hi)
        self.lo, self.hi = (lo, hi) if lo <= hi else (hi, lo)

    @staticmethod
    def _lift(x) -> RatInterval:
        return x if isinstance(x, RatInterval) else RatInterval(x, x)

    def __add__(self, o):
        o = self._lift(o)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RatInterval(-self.hi, -self.lo)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        c = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(c), max(c))

    __rmul__ = __mul__

    def reciprocal(self) -> RatInterval:
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, o):
        return self * self._lift(o).reciprocal()

    def __rtruediv__(self, o):
        return self._lift(o) * self.reciprocal()

    def intersects(self, o: RatInterval) -> bool:
        return self.lo <= o.hi and o.lo <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __repr__(self) -> str:
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"


class SlopeContext:
    """An irrational slope alpha in (0, 1/2) with cached convergents and brackets."""

    def __init__(self, spec: SlopeSpec | str, max_terms: int = DEFAULT_MAX_TERMS):
        if isinstance(spec, str):
            spec = parse_slope(spec)
        if spec.a0 != 0:
            raise SlopeNormalizationError(f"slope must have a0 = 0, got {spec}")
        a1 = spec.term(1)
        if a1 == 1:
            raise SlopeNormalizationError(
                f"a_1 = 1 puts alpha above 1/2 in {spec}; exchange the letters and "
                f"use the slope 1 - alpha = [0; a_2+1, a_3, ...] instead"
            )
        self.spec = spec
        self.max_terms = max_terms
        self.cf = Convergents(spec, max_terms)
        self._tails: dict[int, Convergents] = {}
        self._lock = threading.Lock()
        # per-slope memo for derived data (long prefixes, factor sets)
        self.memo: dict = {}

    def __repr__(self) -> str:
        return f"SlopeContext({str(self.spec)!r})"

    def __getstate__(self):
        return {"spec": self.spec, "max_terms": self.max_terms}

    def __setstate__(self, state):
        self.__init__(state["spec"], state["max_terms"])

    @property
    def depth_used(self) -> int:
        """Deepest convergent index touched so far."""
        return self.cf.deepest

    def a(self, i: int) -> int:
        v = self.spec.term(i)
        if v is None or i > self.max_terms:
            raise InsufficientExpansion(f"a_{i} unavailable for {self.spec}")
        return v

    def p(self, k: int) -> int:
        return self.cf.pq(k)[0]

    def q(self, k: int) -> int:
        return self.cf.pq(k)[1]

    def semiconvergent(self, k: int, ell: int) -> int:
        """q_{k,ell} = ell*q_{k-1} + q_{k-2} (no range check on ell)."""
        return ell * self.q(k - 1) + self.q(k - 2)

    def tail(self, t: int) -> Convergents:
        """Convergents of alpha_t = [a_t; a_{t+1}, ...]."""
        with self._lock:
            cf = self._tails.get(t)
            if cf is None:
                cf = self._tails[t] = Convergents(self.spec.shifted(t), self.max_terms)
        return cf

    def interval(self, f: LinearForm, depth: int) -> RatInterval:
        iv = self.cf.interval(depth)
        return RatInterval(f.at(iv.lo), f.at(iv.hi))

    def sign(self, f: LinearForm) -> int:
        a, b = f.a, f.b
        if b == 0:
            return (a > 0) - (a < 0)
        an, ad = a.numerator, a.denominator
        j = 0
        while True:
            p0, q0, p1, q1 = self.cf.bracket(j)
            # alpha is strictly inside (p0/q0, p1/q1) and a + b*x is monotone
            v0 = an * q0 + b * p0 * ad
            v1 = an * q1 + b * p1 * ad
            if v0 >= 0 and v1 >= 0:
                return 1
            if v0 <= 0 and v1 <= 0:
                return -1
            j += 1

    def floor(self, f: LinearForm) -> int:
        a, b = f.a, f.b
        if b == 0:
            return math.floor(a)
        an, ad = a.numerator, a.denominator
        j = 0
        while True:
            p0, q0, p1, q1 = self.cf.bracket(j)
            f0 = (an * q0 + b * p0 * ad) // (ad * q0)
            f1 = (an * q1 + b * p1 * ad) // (ad * q1)
            if f0 == f1:
                return f0
            j += 1

    def ceil(self, f: LinearForm) -> int:
        return -self.floor(-f)

    def orbit_floors(self, c: Fraction, d: int, count: int, ceil: bool = False) -> list[int]:
        """floor (or ceil) of c + (d+n)*alpha for n = 0..count-1, certified."""
        c = Fraction(c)
        span = abs(d) + count + 1
        j = 0
        try:
            while True:
                p0, q0, p1, q1 = self.cf.bracket(j)
                if q0 * q1 >= 1024 * span:
                    break
                j += 1
        except InsufficientExpansion:
            j = max(j - 1, 0)
            p0, q0, p1, q1 = self.cf.bracket(j)
        cn, cd = (-c if ceil else c).numerator, c.denominator
        sgn = -1 if ceil else 1
        out = []
        for n in range(count):
            b = sgn * (d + n)
            f0 = (cn * q0 + b * p0 * cd) // (cd * q0)
            f1 = (cn * q1 + b * p1 * cd) // (cd * q1)
            if f0 != f1:
                f0 = self.floor(LinearForm(Fraction(cn, cd), b))
            out.append(-f0 if ceil else f0)
        return out


def sign_of(ctx: SlopeContext, f: LinearForm) -> int:
    return ctx.sign(f)


def compare(ctx: SlopeContext, f: LinearForm, g: LinearForm) -> int:
    return ctx.sign(f - g)


def theta(ctx: SlopeContext, k: int) -> LinearForm:
    """||q_k alpha|| as the exact form (-1)^k (q_k alpha - p_k)."""
    p, q = ctx.cf.pq(k)
    s = 1 if k % 2 == 0 else -1
    return LinearForm(Fraction(-s * p), s * q)


def convergents(ctx: SlopeContext, up_to: int) -> list[tuple[int, int]]:
    """All (p_k, q_k), k >= 0, with q_k <= up_to."""
    if up_to < 1:
        raise ValueError("up_to must be >= 1")
    out = []
    k = 0
    while ctx.q(k) <= up_to:
        out.append(ctx.cf.pq(k))
        k += 1
    return out


def iter_k(ctx: SlopeContext, up_to: int) -> Iterator[int]:
    k = 0
    while ctx.q(k) <= up_to:
        yield k
        k += 1


@dataclass(frozen=True)
class DenominatorSets:
    qk: frozenset[int]
    qkl: frozenset[int]
    m: frozenset[int]

    @property
    def semiconvergents(self) -> frozenset[int]:
        return self.qkl - self.qk

    @property
    def admissible(self) -> frozenset[int]:
        return self.qkl | self.m

    def __iter__(self):
        return iter((self.qk, self.qkl, self.m))


def denominator_sets(ctx: SlopeContext, up_to: int) -> DenominatorSets:
    """Q_k (convergent denominators), Q_kl (plus semiconvergents) and the multiples set M."""
    if up_to < 1:
        raise ValueError("up_to must be >= 1")
    qk, semis, mult = set(), set(), set()
    for k in iter_k(ctx, up_to):
        q = ctx.q(k)
        qk.add(q)
        for t in range(1, ctx.a(k + 1) + 1):
            if t * q > up_to:
                break
            mult.add(t * q)
    k = 2
    while ctx.q(k - 1) + ctx.q(k - 2) <= up_to:
        for ell in range(1, ctx.a(k)):
            v = ctx.semiconvergent(k, ell)
            if v > up_to:
                break
            semis.add(v)
        k += 1
    return DenominatorSets(frozenset(qk), frozenset(qk | semis), frozenset(mult))


def norm_multiple(ctx: SlopeContext, n: int) -> tuple[int, LinearForm]:
    """Nearest integer r to n*alpha and ||n*alpha|| as a positive linear form."""
    if n < 1:
        raise ValueError("n must be >= 1")
    r = ctx.floor(LinearForm(Fraction(1, 2), n))
    diff = LinearForm(Fraction(-r), n)
    return r, diff if ctx.sign(diff) > 0 else -diff


def floor_ratio(ctx: SlopeContext, num: LinearForm, den: LinearForm) -> int:
    """Certified floor(num / den) for den > 0."""
    if ctx.sign(den) <= 0:
        raise ValueError("denominator must be positive")
    j = 0
    while True:
        iv_n, iv_d = ctx.interval(num, j), ctx.interval(den, j)
        if iv_d.lo > 0:
            r = iv_n / iv_d
            lo, hi = math.floor(r.lo), math.floor(r.hi)
            if hi - lo <= 3:
                for cand in range(lo, hi + 1):
                    if ctx.sign(num - cand * den) >= 0 and ctx.sign(num - (cand + 1) * den) < 0:
                        return cand
        j += 1


def abexp_formula(ctx: SlopeContext, m: int) -> int:
    """Largest exponent of an abelian power of period m in the language: floor(1/||m alpha||)."""
    _, th = norm_multiple(ctx, m)
    return floor_ratio(ctx, ONE, th)


def approx(ctx: SlopeContext, f: LinearForm, depth: int = 12) -> float:
    """Float midpoint for display only."""
    iv = ctx.interval(f, depth)
    return float((iv.lo + iv.hi) / 2)


# Identity checks between norms of convergent multiples -------------------------

def alpha_from_norms(ctx: SlopeContext, k: int) -> LinearForm:
    """p_{k+1}*||q_k a|| + ||q_{k+1} a|| as an exact form."""
    return ctx.p(k + 1) * theta(ctx, k) + theta(ctx, k + 1)


def alpha_from_norms_weighted(ctx: SlopeContext, k: int) -> LinearForm:
    """p_{k+1}*||q_k a|| + p_k*||q_{k+1} a||, which equals alpha for every k >= 0."""
    return ctx.p(k + 1) * theta(ctx, k) + ctx.p(k) * theta(ctx, k + 1)


def complete_quotient(ctx: SlopeContext, t: int, depth: int) -> RatInterval:
    """Enclosure of alpha_t = [a_t; a_{t+1}, ...]."""
    return ctx.tail(t).interval(depth)


def norm_ratio_enclosures(ctx: SlopeContext, k: int, depth: int) -> tuple[RatInterval, RatInterval]:
    """||q_k a|| / ||q_{k+1} a|| against alpha_{k+2}."""
    lhs = ctx.interval(theta(ctx, k), depth) / ctx.interval(theta(ctx, k + 1), depth)
    return lhs, complete_quotient(ctx, k + 2, depth)


def norm_reciprocal_enclosures(ctx: SlopeContext, k: int, depth: int) -> tuple[RatInterval, RatInterval]:
    """||q_k a|| against 1 / (alpha_{k+1} q_k + q_{k-1})."""
    rhs = 1 / (complete_quotient(ctx, k + 1, depth) * ctx.q(k) + ctx.q(k - 1))
    return ctx.interval(theta(ctx, k), depth), rhs


def consecutive_norm_enclosures(ctx: SlopeContext, k: int, ell: int, depth: int) -> tuple[RatInterval, RatInterval]:
    """1/(||q_{k-1} a|| + l*||q_k a||) against (alpha_{k+1} q_k + q_{k-1}) / (alpha_{k+1} + l)."""
    lhs = 1 / ctx.interval(theta(ctx, k - 1) + ell * theta(ctx, k), depth)
    a = complete_quotient(ctx, k + 1, depth)
    return lhs, (a * ctx.q(k) + ctx.q(k - 1)) / (a + ell)


def best_approximation_violations(ctx: SlopeContext, n_max: int) -> list[tuple[int, int]]:
    """Pairs (k, n) with 0 < n < q_{k+1} <= n_max where ||n a|| < ||q_k a|| or ties with n != q_k."""
    norms = {n: norm_multiple(ctx, n)[1] for n in range(1, n_max)}
    bad = []
    k = 0
    while ctx.q(k + 1) <= n_max:
        ref = theta(ctx, k)
        for n in range(1, ctx.q(k + 1)):
            s = ctx.sign(norms[n] - ref)
            if s < 0 or (s == 0 and n != ctx.q(k)):
                bad.append((k, n))
        k += 1
    return bad
