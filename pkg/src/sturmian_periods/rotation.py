"""Points and arcs on the circle T = [0, 1), rotation coding, factor intervals."""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction

from .contfrac import ONE, LinearForm, SlopeContext
from .errors import NotAFactor


class EndpointConvention(enum.Enum):
    """Where 0 lives: I0 = [0, 1-alpha) or I0 = (0, 1-alpha]."""

    ZeroInI0 = "0inI0"
    ZeroNotInI0 = "0notinI0"

    @classmethod
    def parse(cls, text: str) -> EndpointConvention:
        for c in cls:
            if text in (c.value, c.name):
                return c
        raise ValueError(f"unknown convention {text!r}")


@dataclass(frozen=True)
class TPoint:
    """A point of T stored as a reduced linear form with value in [0, 1)."""

    form: LinearForm

    @classmethod
    def of(cls, ctx: SlopeContext, f: LinearForm | int | Fraction) -> TPoint:
        if not isinstance(f, LinearForm):
            f = LinearForm(Fraction(f), 0)
        return cls(f - ctx.floor(f))

    @classmethod
    def neg_multiple(cls, ctx: SlopeContext, n: int) -> TPoint:
        """{-n alpha}."""
        return cls.of(ctx, LinearForm(Fraction(0), -n))

    @property
    def a(self) -> Fraction:
        return self.form.a

    @property
    def b(self) -> int:
        return self.form.b

    def __str__(self) -> str:
        return f"{{{self.form}}}"


ORIGIN = TPoint(LinearForm(Fraction(0), 0))


def compare_points(ctx: SlopeContext, x: TPoint, y: TPoint) -> int:
    """-1, 0, 1 as x is below, equal to, above y."""
    if x == y:
        return 0
    return ctx.sign(x.form - y.form)


def arc_offset(ctx: SlopeContext, lo: TPoint, x: TPoint) -> LinearForm:
    """(x - lo) mod 1 as a form with value in [0, 1)."""
    d = x.form - lo.form
    return d + 1 if ctx.sign(d) < 0 else d


@dataclass(frozen=True)
class TInterval:
    """Arc from lo to hi going up; [lo, hi) under ZeroInI0, (lo, hi] otherwise.

    lo == hi denotes the whole circle.
    """

    lo: TPoint
    hi: TPoint
    convention: EndpointConvention

    def length(self, ctx: SlopeContext) -> LinearForm:
        if self.lo == self.hi:
            return ONE
        return arc_offset(ctx, self.lo, self.hi)

    def contains(self, ctx: SlopeContext, x: TPoint) -> bool:
        if self.lo == self.hi:
            return True
        d = arc_offset(ctx, self.lo, x)
        n = self.length(ctx)
        if self.convention is EndpointConvention.ZeroInI0:
            return ctx.sign(n - d) > 0
        return not d.is_zero() and ctx.sign(n - d) >= 0

    def representative(self) -> TPoint:
        """The endpoint that belongs to the arc."""
        return self.lo if self.convention is EndpointConvention.ZeroInI0 else self.hi


def _letter_at(ctx: SlopeContext, y: TPoint, i: int, conv: EndpointConvention) -> int:
    return int(code_orbit(ctx, y, 1, conv, start=i))


def code_orbit(
    ctx: SlopeContext, rho: TPoint, length: int, conv: EndpointConvention, start: int = 0
) -> str:
    """Letters nu(rho + n alpha) for n = start .. start+length-1."""
    if length < 0:
        raise ValueError("length must be >= 0")
    if length == 0:
        return ""
    ceil = conv is EndpointConvention.ZeroNotInI0
    fl = ctx.orbit_floors(rho.a, rho.b + start, length + 1, ceil=ceil)
    return "".join("1" if fl[n + 1] != fl[n] else "0" for n in range(length))


def factor_interval(ctx: SlopeContext, w: str, conv: EndpointConvention) -> TInterval:
    """The arc [w] of intercepts whose orbit coding starts with w."""
    if not w:
        raise ValueError("word must be nonempty")
    arc = TInterval(ORIGIN, ORIGIN, conv)
    for i, ch in enumerate(w):
        if ch not in "01":
            raise ValueError(f"not a binary word: {w!r}")
        cut = TPoint.neg_multiple(ctx, i + 1)
        whole = arc.lo == arc.hi
        inside = whole and cut != arc.lo
        if not whole and cut != arc.lo and cut != arc.hi:
            d = arc_offset(ctx, arc.lo, cut)
            inside = ctx.sign(arc.length(ctx) - d) > 0
        if inside:
            pieces = (TInterval(arc.lo, cut, conv), TInterval(cut, arc.hi, conv))
            for piece in pieces:
                if _letter_at(ctx, piece.representative(), i, conv) == int(ch):
                    arc = piece
                    break
        elif _letter_at(ctx, arc.representative(), i, conv) != int(ch):
            raise NotAFactor(f"{w!r} is not a factor (fails at position {i})")
    return arc


def cut_points(ctx: SlopeContext, n: int) -> list[TPoint]:
    """0, {-alpha}, ..., {-n alpha} in increasing order."""
    pts = [TPoint.neg_multiple(ctx, i) for i in range(n + 1)]
    return sorted(pts, key=functools.cmp_to_key(lambda x, y: compare_points(ctx, x, y)))


def atoms(ctx: SlopeContext, n: int, conv: EndpointConvention) -> list[tuple[TInterval, str]]:
    """The n+1 arcs cut by the points {-i alpha}, each with its length-n coding."""
    pts = cut_points(ctx, n)
    out = []
    for i, lo in enumerate(pts):
        hi = pts[(i + 1) % len(pts)]
        arc = TInterval(lo, hi, conv)
        out.append((arc, code_orbit(ctx, arc.representative(), n, conv)))
    return out


def interval_extrema(ctx: SlopeContext, n: int) -> tuple[LinearForm, LinearForm]:
    """Shortest and longest of the n+1 arcs cut by 0, {-alpha}, ..., {-n alpha}."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return ONE, ONE
    pts = cut_points(ctx, n)
    gaps = [pts[i + 1].form - pts[i].form for i in range(n)]
    gaps.append(pts[0].form + 1 - pts[-1].form)
    key = functools.cmp_to_key(lambda f, g: ctx.sign(f - g))
    return min(gaps, key=key), max(gaps, key=key)
