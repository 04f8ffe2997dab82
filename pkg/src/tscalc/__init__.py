"""Computable calculus on time scales: exact jump operators and measures on
finite unions of intervals and points, delta integration by two independent
algorithms, forward-difference and measure-density derivatives, and
executable checks of their agreement and of absolute-continuity equivalence.
"""

from .abscont import (
    ACReport,
    EquivalenceReport,
    check_ac_equivalence,
    check_delta_ac,
    ftc_reconstruct,
    lebesgue_point_average,
    verify_ftc,
)
from .calculus import (
    AgreementReport,
    counterexample_quotient,
    delta_integral,
    delta_integral_via_rho,
    derivative_agreement,
    hilger_derivative,
    rn_derivative,
)
from .corpus import builtin, default_corpus, make_scale_function, paired_function
from .functions import (
    LimitResult,
    RealLineFunction,
    ScaleFunction,
    extend,
    one_sided_limit,
)
from .measure import (
    BorelSet,
    DeltaMeasure,
    measure_interval,
    point_mass,
    preimage_measure,
    support_check,
)
from .scale import PointClass, TimeScale, canonicalize
from .suites import SUITE_NAMES, run_suite

__version__ = "0.1.0"

__all__ = [
    "ACReport",
    "AgreementReport",
    "BorelSet",
    "DeltaMeasure",
    "EquivalenceReport",
    "LimitResult",
    "PointClass",
    "RealLineFunction",
    "ScaleFunction",
    "SUITE_NAMES",
    "TimeScale",
    "builtin",
    "canonicalize",
    "check_ac_equivalence",
    "check_delta_ac",
    "counterexample_quotient",
    "default_corpus",
    "delta_integral",
    "delta_integral_via_rho",
    "derivative_agreement",
    "extend",
    "ftc_reconstruct",
    "hilger_derivative",
    "lebesgue_point_average",
    "make_scale_function",
    "measure_interval",
    "one_sided_limit",
    "paired_function",
    "point_mass",
    "preimage_measure",
    "rn_derivative",
    "run_suite",
    "support_check",
    "verify_ftc",
]
