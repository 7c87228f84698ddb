"""Lower and upper bounds on Delta(eps) and their envelopes."""

from .envelope import (
    ENVELOPE_COLUMNS,
    BoundCertificate,
    check_consistency,
    default_certificates,
    envelope_csv,
    envelope_table,
    lower_envelope,
    upper_envelope,
    upper_from_bstar,
)
from .lower import (
    QuarticInputs,
    central_coefficient_floor,
    delta_half_lower,
    feasibility_threshold,
    quartic_bound,
    quartic_min_value,
    quartic_minimizer,
    sdr,
    simple_lower_from_kernel,
    sin_cap,
    trivial_lower,
)

__all__ = [
    "BoundCertificate",
    "ENVELOPE_COLUMNS",
    "QuarticInputs",
    "central_coefficient_floor",
    "check_consistency",
    "default_certificates",
    "delta_half_lower",
    "envelope_csv",
    "envelope_table",
    "feasibility_threshold",
    "lower_envelope",
    "quartic_bound",
    "quartic_min_value",
    "quartic_minimizer",
    "sdr",
    "simple_lower_from_kernel",
    "sin_cap",
    "trivial_lower",
    "upper_envelope",
    "upper_from_bstar",
]
