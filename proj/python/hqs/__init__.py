"""Qubit-coupled acoustic resonator protocol simulation and physics bounds."""

from ._core import (
    ContrastResult,
    CSLResult,
    DeviceParams,
    DPResult,
    EvolveSettings,
    GWResult,
    HilbertLayout,
    InvalidParameterError,
    NumericalError,
    ProtocolSettings,
    block_statistics,
    bose_population,
    csl_bound,
    effective_temperature,
    evolve_to_steady,
    h0_bound,
    infer_population,
    kappa_bound,
    run_protocol,
    steady_occupation_analytic,
    synthetic_blocks,
    weighted_mean,
    xi_33,
    xi_33_numeric,
)

__all__ = [
    "ContrastResult",
    "CSLResult",
    "DeviceParams",
    "DPResult",
    "EvolveSettings",
    "GWResult",
    "HilbertLayout",
    "InvalidParameterError",
    "NumericalError",
    "ProtocolSettings",
    "block_statistics",
    "bose_population",
    "csl_bound",
    "effective_temperature",
    "evolve_to_steady",
    "h0_bound",
    "infer_population",
    "kappa_bound",
    "run_protocol",
    "steady_occupation_analytic",
    "synthetic_blocks",
    "weighted_mean",
    "xi_33",
    "xi_33_numeric",
]
