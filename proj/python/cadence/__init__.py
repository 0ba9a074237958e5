"""Steane-code QEC cadence simulator: analytic model, calibration and Monte Carlo."""

import json as _json

from ._core import (
    AbstractRates,
    BitErrorRates,
    ConfigError,
    SimulationAbort,
    apply_ideal_qec,
    bit_error_rates,
    d_over_c1,
    decode_syndrome,
    estimate_pl_mc,
    gamma,
    gamma3,
    grid_argmin,
    m_min,
    pairwise_fault_oracle,
    pl_second_order,
    rates_at,
    self_check,
    syndrome_of,
    table_contributions,
)
from ._core import calibrate as _calibrate
from ._core import sweep_csv as _sweep_csv


def calibrate(eps_g=None, shots=1_000_000, seed=0, normalization="per_qubit", threads=1):
    """Run the calibration micro-simulations and return the record as a dict."""
    kwargs = dict(shots=shots, seed=seed, normalization=normalization, threads=threads)
    if eps_g is not None:
        kwargs["eps_g"] = list(eps_g)
    return _json.loads(_calibrate(**kwargs))


def sweep_csv(config, threads=1):
    """Run a sweep from a config dict (same schema as the CLI) and return CSV text."""
    return _sweep_csv(_json.dumps(config), threads)


__all__ = [name for name in dir() if not name.startswith("_")]
