"""Entanglement dynamics of N equivalent-neighbor spin-1/2 dots in the XY model.

Thin re-export of the compiled ``_core`` module. Times are dimensionless
(tau = coupling * t) everywhere.
"""

from ._core import (
    DomainError,
    IntegrityError,
    ModelSpec,
    NumericError,
    ResourceError,
    amplitudes_at,
    b_coefficient,
    b_table,
    binomial,
    critical_times_m1,
    entropy,
    entropy_rate_m1,
    entropy_series,
    magic_number_scan,
    max_entropy_at_t2,
    maximize_entropy,
    oracle,
    phase_spectrum,
    reaches_full_ebit,
    schmidt_spectrum,
)

__all__ = [
    "DomainError",
    "IntegrityError",
    "ModelSpec",
    "NumericError",
    "ResourceError",
    "amplitudes_at",
    "b_coefficient",
    "b_table",
    "binomial",
    "critical_times_m1",
    "entropy",
    "entropy_rate_m1",
    "entropy_series",
    "magic_number_scan",
    "max_entropy_at_t2",
    "maximize_entropy",
    "oracle",
    "phase_spectrum",
    "reaches_full_ebit",
    "schmidt_spectrum",
]
