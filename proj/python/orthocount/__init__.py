from ._orthocount import (
    InputError,
    VerificationError,
    e8_check,
    formal_curve,
    local_density,
    min_set,
    minval_violations,
    nonordinary_equation,
    ssmain_bound,
    superspecial_case1_trace,
    theta_series,
)

__all__ = [
    "InputError",
    "VerificationError",
    "e8_check",
    "formal_curve",
    "local_density",
    "min_set",
    "minval_violations",
    "nonordinary_equation",
    "ssmain_bound",
    "superspecial_case1_trace",
    "theta_series",
]
