"""Canonical heights on genus-2 Jacobians via Kummer surfaces and theta functions.

The library computes Neron-Tate heights for curves y^2 = F(x) with deg F = 5
over the rationals through exact Kummer-surface arithmetic, evaluates the
Riemann theta functions with half-integer characteristics rigorously (every
analytic output is a midpoint-radius ball), and checks the whole family of
explicit local and global height bounds, theta-constant inequalities, and
Faltings-height estimates that the height machinery rests on.
"""

from .balls import DEFAULT_PRECISION, BallComplex, BallReal
from .certificates import (
    BoundCertificate,
    constants_manifest,
    jacobian_lower_bound,
    pigeonhole_multiplier,
    product_case_bound,
    rational_points_bound,
    torsion_bound,
    zero_lemma_filter,
)
from .errors import (
    AbelHeightError,
    DivisorProximityError,
    HypothesisError,
    InternalConsistencyError,
    LemmaViolationError,
    PrecisionError,
    ValidationError,
)
from .exactpoly import (
    SparsePoly,
    is_prime,
    poly_discriminant,
    resultant,
    valuation,
)
from .faltings import (
    FaltingsReport,
    elliptic_delta,
    elliptic_faltings_upper,
    elliptic_height_lower,
    faltings_arch_term,
    faltings_upper_bound,
)
from .jacobian import (
    CurveModel,
    MumfordDivisor,
    cantor_add,
    cantor_double,
    embed_point,
    identity,
    inverse,
    is_on_theta,
    scalar_mul,
)
from .kummer import (
    KummerPoint,
    LocalHeightReport,
    canonical_height,
    duplicate,
    kummer_map,
    local_lambda_finite,
    naive_height,
)
# note: the evaluation function abelheight.theta.theta is deliberately not
# re-exported here, so the submodule binding `abelheight.theta` survives
from .theta import (
    EVEN_CHARACTERISTICS,
    LAMBDA_CHARACTERISTIC,
    PeriodMatrix,
    SiegelReport,
    ThetaCharacteristic,
    TorusPoint,
    big_lambda,
    even_theta_constants,
    lambda_lower_bound,
    siegel_checks,
    theta_constant,
    three_torsion_lambda_sum,
)
from .torsion3 import three_torsion_kummer, three_torsion_product

__version__ = "0.1.0"

__all__ = [
    "BallComplex",
    "BallReal",
    "BoundCertificate",
    "CurveModel",
    "DEFAULT_PRECISION",
    "EVEN_CHARACTERISTICS",
    "FaltingsReport",
    "KummerPoint",
    "LAMBDA_CHARACTERISTIC",
    "LocalHeightReport",
    "MumfordDivisor",
    "PeriodMatrix",
    "SiegelReport",
    "SparsePoly",
    "ThetaCharacteristic",
    "TorusPoint",
    "big_lambda",
    "canonical_height",
    "cantor_add",
    "cantor_double",
    "constants_manifest",
    "duplicate",
    "elliptic_delta",
    "elliptic_faltings_upper",
    "elliptic_height_lower",
    "embed_point",
    "even_theta_constants",
    "faltings_arch_term",
    "faltings_upper_bound",
    "identity",
    "inverse",
    "is_on_theta",
    "is_prime",
    "jacobian_lower_bound",
    "kummer_map",
    "lambda_lower_bound",
    "local_lambda_finite",
    "naive_height",
    "pigeonhole_multiplier",
    "poly_discriminant",
    "product_case_bound",
    "rational_points_bound",
    "resultant",
    "scalar_mul",
    "siegel_checks",
    "theta_constant",
    "three_torsion_kummer",
    "three_torsion_lambda_sum",
    "three_torsion_product",
    "torsion_bound",
    "valuation",
    "zero_lemma_filter",
]
