from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from sturmian_periods import SlopeContext, parse_slope

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIB = "0;2,(1)"
MATRIX = ["0;2,(1)", "0;(2)", "0;2,1,2,3,(1)", "0;2,3,2,(1)", "0;3,2,(1,2)"]


@lru_cache(maxsize=None)
def ctx_for(spec: str) -> SlopeContext:
    return SlopeContext(spec)


@pytest.fixture
def fib():
    return ctx_for(FIB)


@pytest.fixture(params=MATRIX)
def slope(request):
    return ctx_for(request.param)


def alpha_fraction(spec: str, terms: int = 60) -> Fraction:
    """Independent oracle: the truncated expansion summed from the back."""
    s = parse_slope(spec)
    x = Fraction(s.term(terms))
    for i in range(terms - 1, 0, -1):
        x = s.term(i) + 1 / x
    return 1 / x


def word_by_floor(spec: str, n: int, rho: Fraction | None = None) -> str:
    """Independent oracle: lower mechanical word floor((i+1)a + r) - floor(i a + r)."""
    a = alpha_fraction(spec)
    r = a if rho is None else rho
    return "".join(str(int((i + 1) * a + r) - int(i * a + r)) for i in range(n))
