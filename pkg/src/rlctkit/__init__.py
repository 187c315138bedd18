"""Exact real log canonical thresholds from resolution data, with a Monte-Carlo oracle.

The exact engine (:mod:`rlctkit.resolution`) computes thresholds, monomial
multiplier-ideal membership, and real jumping numbers from normal-crossing
resolution data in rational arithmetic.  Fixture families with closed-form
answers live in :mod:`rlctkit.families`; the numerical cross-check, a
Monte-Carlo estimator of sublevel-set volume asymptotics and shell-integral
integrability, lives in :mod:`rlctkit.zeta`.
"""

from .errors import (
    DimensionMismatchError,
    InvalidModelError,
    NonHomogeneousError,
    SchemaError,
    UnsupportedModelError,
    ZeroPolynomialError,
)
from .families import (
    FamilyFixture,
    build_family,
    default_fixtures,
    deformed_power_family,
    monomial_family,
    quartic_sextic_fixture,
    simple_type_family,
)
from .polynomials import (
    SimpleTypeStatus,
    SimpleTypeVerdict,
    SparsePolynomial,
    evaluate,
    exponent_box,
    leading_form,
    screen_simple_type,
    sum_of_squares,
)
from .rationals import INFINITY, rational_from_str, rational_to_str
from .resolution import (
    DivisorRecord,
    JumpReport,
    ResolutionModel,
    ThresholdComparison,
    compare,
    graded_piece_nonempty,
    lct,
    member,
    member_box,
    member_left,
    real_jumping_numbers,
    rlct,
)
from .zeta import (
    ChainCheck,
    IntegrabilityVerdict,
    McEstimate,
    SampleConfig,
    SampleRegion,
    check_integrability,
    estimate_decay_exponent,
    estimate_rlct,
    mc_volume,
    verify_threshold_chain,
)

__version__ = "0.1.0"

__all__ = [
    "ChainCheck",
    "DimensionMismatchError",
    "DivisorRecord",
    "FamilyFixture",
    "INFINITY",
    "IntegrabilityVerdict",
    "InvalidModelError",
    "JumpReport",
    "McEstimate",
    "NonHomogeneousError",
    "ResolutionModel",
    "SampleConfig",
    "SampleRegion",
    "SchemaError",
    "SimpleTypeStatus",
    "SimpleTypeVerdict",
    "SparsePolynomial",
    "ThresholdComparison",
    "UnsupportedModelError",
    "ZeroPolynomialError",
    "build_family",
    "check_integrability",
    "compare",
    "default_fixtures",
    "deformed_power_family",
    "estimate_decay_exponent",
    "estimate_rlct",
    "evaluate",
    "exponent_box",
    "graded_piece_nonempty",
    "lct",
    "leading_form",
    "mc_volume",
    "member",
    "member_box",
    "member_left",
    "monomial_family",
    "quartic_sextic_fixture",
    "rational_from_str",
    "rational_to_str",
    "real_jumping_numbers",
    "rlct",
    "screen_simple_type",
    "simple_type_family",
    "sum_of_squares",
    "verify_threshold_chain",
]
