"""Abelian and k-abelian periods of factors of Sturmian words, with certified arithmetic."""

from .abelian import (
    AbelianDecomposition,
    ParikhVector,
    abelian_period_set,
    counterexample_witness,
    has_abelian_period,
    max_abelian_exponent_scan,
    min_abelian_period,
    min_period,
    ordinary_period_set,
    parikh,
    qk_witness,
)
from .bounds import Verdict, admissible_periods, exponent_bounds, locate, main_inequality
from .contfrac import (
    LinearForm,
    SlopeContext,
    SlopeSpec,
    abexp_formula,
    convergents,
    denominator_sets,
    norm_multiple,
    parse_slope,
    theta,
)
from .errors import *  # noqa: F401,F403
from .kabelian import (
    count_k_classes,
    generalized_parikh,
    k_equivalent,
    k_exponent_estimate,
    k_period_set,
    sense1_min_period,
    sense2_min_period,
)
from .language import (
    characteristic_prefix,
    factors_of_length,
    is_factor,
    return_structure,
    same_phase_return_analysis,
    singular_factor,
)
from .rotation import EndpointConvention, TInterval, TPoint, code_orbit, factor_interval

__version__ = "0.1.0"
