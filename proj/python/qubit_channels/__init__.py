"""Volumes, uniform sampling and contraction coefficients of qubit channels."""

from ._core import (
    SPACE_KINDS,
    Channel,
    __version__,
    classical_dobrushin,
    construct_channel_with_eta,
    estimate_fiber_volume,
    estimate_total_volume,
    eta_bounds,
    eta_cdf,
    eta_profile,
    fiber_volume,
    ks_two_sample,
    oracle_sample_fiber,
    run_cli,
    sample_fiber,
    sample_global,
    total_volume,
)

__all__ = [
    "SPACE_KINDS",
    "Channel",
    "__version__",
    "classical_dobrushin",
    "construct_channel_with_eta",
    "estimate_fiber_volume",
    "estimate_total_volume",
    "eta_bounds",
    "eta_cdf",
    "eta_profile",
    "fiber_volume",
    "ks_two_sample",
    "oracle_sample_fiber",
    "run_cli",
    "sample_fiber",
    "sample_global",
    "total_volume",
]
