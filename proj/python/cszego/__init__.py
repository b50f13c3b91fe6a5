"""Cauchy-Szego Lambda function on planar curves."""

from ._cszego import (
    CszegoError,
    Curve,
    LambdaValue,
    cauchy_matrix,
    fks_upper_bound,
    lambda_ellipse_0,
    lambda_ellipse_inf,
    lambda_value,
    lambda_wedge,
    norm_bounds,
    operator_norm,
    spectrum,
    szego_diag,
    szego_kst,
    verify,
    wedge_bound_B,
)

__all__ = [
    "CszegoError",
    "Curve",
    "LambdaValue",
    "cauchy_matrix",
    "fks_upper_bound",
    "lambda_ellipse_0",
    "lambda_ellipse_inf",
    "lambda_value",
    "lambda_wedge",
    "norm_bounds",
    "operator_norm",
    "spectrum",
    "szego_diag",
    "szego_kst",
    "verify",
    "wedge_bound_B",
]
