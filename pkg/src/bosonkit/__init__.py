"""Exact normal ordering of boson monomial powers and everything it implies.

The package normal orders [(a+)^r a^s]^n in the Weyl algebra [a, a+] = 1,
reads off generalized Stirling and Bell numbers, evaluates the matching
series representations with certified error bounds, and verifies the
generating-function and moment-measure identities these numbers satisfy.
Every computed quantity is reachable by at least two independent routes, and
the verification suites cross them against each other.
"""

from .errors import (
    BosonKitError,
    DivergentSeriesError,
    DomainError,
    InconclusiveError,
    MalformedNormalFormError,
    NonIntegerResultError,
    OutOfRangeError,
    PrecisionExhaustedError,
    UnsupportedError,
    UnsupportedFamilyError,
    UnsupportedMomentError,
)
from .numeric import DEFAULT_BITS, ErrorBoundedReal, SeriesSpec
from .operator_algebra import (
    ANNIHILATE,
    CREATE,
    BosonWord,
    MonomialSpec,
    NormalForm,
    coherent_expectation,
    extract_stirling,
    monomial_power_normal_form,
    multiply,
    normal_order_word,
)
from .stirling import (
    BellValue,
    StirlingTable,
    bell,
    lah,
    stirling,
    stirling_rr_closed,
    stirling_table,
)
from .dobinski import (
    bell_hypergeometric,
    dobinski_classic,
    dobinski_rr,
    dobinski_rs,
    dobinski_rs_literal,
)
from .genfunc import (
    FormalSeries,
    NormalExponentialReport,
    OperatorSeries,
    egf_classic,
    egf_r1,
    select_normalization_order,
    verify_normal_exponential,
)
from .measures import (
    ContinuousDensity,
    DiscreteMeasure,
    MomentReport,
    bessel_i,
    continuous_moment_series,
    dirac_comb,
    moment,
    rarefied_comb,
    verify_moments,
    weight_2r_r,
)

__version__ = "0.1.0"

__all__ = [
    "ANNIHILATE",
    "CREATE",
    "BellValue",
    "BosonKitError",
    "BosonWord",
    "ContinuousDensity",
    "DEFAULT_BITS",
    "DiscreteMeasure",
    "DivergentSeriesError",
    "DomainError",
    "ErrorBoundedReal",
    "FormalSeries",
    "InconclusiveError",
    "MalformedNormalFormError",
    "MomentReport",
    "MonomialSpec",
    "NonIntegerResultError",
    "NormalExponentialReport",
    "NormalForm",
    "OperatorSeries",
    "OutOfRangeError",
    "PrecisionExhaustedError",
    "SeriesSpec",
    "StirlingTable",
    "UnsupportedError",
    "UnsupportedFamilyError",
    "UnsupportedMomentError",
    "bell",
    "bell_hypergeometric",
    "bessel_i",
    "coherent_expectation",
    "continuous_moment_series",
    "dirac_comb",
    "dobinski_classic",
    "dobinski_rr",
    "dobinski_rs",
    "dobinski_rs_literal",
    "egf_classic",
    "egf_r1",
    "extract_stirling",
    "lah",
    "moment",
    "monomial_power_normal_form",
    "multiply",
    "normal_order_word",
    "rarefied_comb",
    "select_normalization_order",
    "stirling",
    "stirling_rr_closed",
    "stirling_table",
    "verify_moments",
    "verify_normal_exponential",
    "weight_2r_r",
]
