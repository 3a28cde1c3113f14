"""Inverse-scattering and long-time asymptotics toolkit for the reverse
space-time nonlocal Hirota equation.

Thin package wrapper around the compiled core module.  Typical use::

    import nlhirota as nlh

    q0 = nlh.gaussian_profile(0.3, 1.0)
    grid = nlh.default_lambda_grid(q0)
    sdata = nlh.reflection_coefficients(q0, grid)
    sdata.alpha, sdata.beta = 0.5, 1.0 / 3.0

    geom = nlh.make_geometry(sdata.alpha, sdata.beta, xi=-3.0)
    ok, diag = nlh.winding_check(sdata, geom)
    lead = nlh.leading_q(sdata, geom, t=100.0)
    check = nlh.oracle_q(q0, sdata, x=-300.0, t=100.0)
"""

from ._nlhirota import (  # noqa: F401
    CutSide,
    DeltaData,
    DeltaEvaluator,
    LeadingOrder,
    M1Convention,
    OracleMode,
    OracleResult,
    Orientation,
    PhaseGeometry,
    Point,
    Profile,
    ScatteringData,
    ScatteringMatrix,
    default_lambda_grid,
    delta_data,
    error_exponent,
    gaussian_profile,
    leading_q,
    leading_q_closed_form,
    make_geometry,
    model_m1_12,
    model_m1_21,
    oracle_q,
    phase_f,
    phase_theta,
    reflection_coefficients,
    scattering_matrix,
    sech_profile,
    stationary_points,
    table_profile_from_file,
    winding_check,
)

__version__ = "0.1.0"

__all__ = [
    "CutSide",
    "DeltaData",
    "DeltaEvaluator",
    "LeadingOrder",
    "M1Convention",
    "OracleMode",
    "OracleResult",
    "Orientation",
    "PhaseGeometry",
    "Point",
    "Profile",
    "ScatteringData",
    "ScatteringMatrix",
    "default_lambda_grid",
    "delta_data",
    "error_exponent",
    "gaussian_profile",
    "leading_q",
    "leading_q_closed_form",
    "make_geometry",
    "model_m1_12",
    "model_m1_21",
    "oracle_q",
    "phase_f",
    "phase_theta",
    "reflection_coefficients",
    "scattering_matrix",
    "sech_profile",
    "stationary_points",
    "table_profile_from_file",
    "winding_check",
]
