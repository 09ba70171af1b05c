"""Fundamental forms, curvatures and the fourth-form Laplace-Beltrami

operator of hypersurfaces in Euclidean 4-space, with rotational
hypersurfaces as the verified core.
"""

from .curvature import (
    CurvatureSet,
    curvature_scale,
    curvatures_charpoly,
    curvatures_closed_form,
    is_j_minimal,
    principal_curvatures,
)
from .dsl import Expr, evaluate, parse, to_source
from .errors import (
    ConsistencyError,
    DegenerateChart,
    DegenerateFourthForm,
    DomainError,
    HyperformError,
    NotArcLength,
    ParseError,
    SingularMatrix,
    UnboundParameter,
)
from .forms import (
    FormsBundle,
    bundle,
    first_form,
    fourth_form,
    gauss_map,
    identity_residuals,
    second_form,
    shape_operator,
    third_form,
)
from .geom4 import (
    Mat3,
    SymMat3,
    Vec4,
    mat3_product,
    sym3_det,
    sym3_eigenvalues,
    sym3_inverse,
    triple_cross,
)
from .jets import ChartFn, Jet, evaluate_jet, finite_difference_oracle
from .laplace import (
    ClosedFormEigen,
    EigenResult,
    LaplaceContext,
    eigen_check,
    eigenvalue_functions,
    laplace_context,
    laplace_iv,
    laplace_iv_all,
)
from .rotational import (
    OneMinimalTrajectory,
    ProfileCurve,
    RotClosedForms,
    classify_corollary11,
    closed_forms,
    integrate_one_minimal,
    minimality_residual,
    pipeline_orientation,
    preset,
    rot_chart,
    rot_curvatures,
    verify_corollary10,
)

__version__ = "0.1.0"

__all__ = [
    "ChartFn",
    "ClosedFormEigen",
    "ConsistencyError",
    "CurvatureSet",
    "DegenerateChart",
    "DegenerateFourthForm",
    "DomainError",
    "EigenResult",
    "Expr",
    "FormsBundle",
    "HyperformError",
    "Jet",
    "LaplaceContext",
    "Mat3",
    "NotArcLength",
    "OneMinimalTrajectory",
    "ParseError",
    "ProfileCurve",
    "RotClosedForms",
    "SingularMatrix",
    "SymMat3",
    "UnboundParameter",
    "Vec4",
    "bundle",
    "classify_corollary11",
    "closed_forms",
    "curvature_scale",
    "curvatures_charpoly",
    "curvatures_closed_form",
    "eigen_check",
    "eigenvalue_functions",
    "evaluate",
    "evaluate_jet",
    "finite_difference_oracle",
    "first_form",
    "fourth_form",
    "gauss_map",
    "identity_residuals",
    "integrate_one_minimal",
    "is_j_minimal",
    "laplace_context",
    "laplace_iv",
    "laplace_iv_all",
    "mat3_product",
    "minimality_residual",
    "parse",
    "pipeline_orientation",
    "preset",
    "principal_curvatures",
    "rot_chart",
    "rot_curvatures",
    "second_form",
    "shape_operator",
    "sym3_det",
    "sym3_eigenvalues",
    "sym3_inverse",
    "third_form",
    "to_source",
    "triple_cross",
    "verify_corollary10",
]
