"""Multiple Dedekind zeta values of real quadratic fields over unit cones.

Series evaluation with tail bounds, membrane and x-coordinate integral
representations, and numeric checks of the differential-form identities.
"""

from .cone import Cone, ConeElement, cone_element, enumerate_cone, norm_form
from .quadfield import (
    FieldElement,
    FieldError,
    QuadraticField,
    embed,
    fundamental_unit,
    is_totally_positive,
    make_field,
    norm,
    totally_positive_unit,
    trace,
)
from .membrane import f0_closed, f0_series, pullback_coefficient, tangent_limit
from .quadrature import (
    IntegralResult,
    QuadratureSpec,
    classical_simplex_integral,
    integral_corollary_x,
    integral_proposition_x,
    integral_zeta2,
    integral_zeta3,
    integral_zeta12,
)
from .series import ExponentVector, SeriesResult, classical_mzv_series, mdzv_series, refine

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "ConeElement",
    "ExponentVector",
    "FieldElement",
    "FieldError",
    "IntegralResult",
    "QuadratureSpec",
    "QuadraticField",
    "SeriesResult",
    "classical_mzv_series",
    "classical_simplex_integral",
    "cone_element",
    "embed",
    "enumerate_cone",
    "f0_closed",
    "f0_series",
    "fundamental_unit",
    "integral_corollary_x",
    "integral_proposition_x",
    "integral_zeta12",
    "integral_zeta2",
    "integral_zeta3",
    "is_totally_positive",
    "make_field",
    "mdzv_series",
    "norm",
    "norm_form",
    "pullback_coefficient",
    "refine",
    "tangent_limit",
    "totally_positive_unit",
    "trace",
]
