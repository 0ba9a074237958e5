import csv
import io
import math

import pytest

import cadence


def test_code_examples():
    assert cadence.syndrome_of(1 << 4) == 0b101
    assert cadence.decode_syndrome(0b110) == 1 << 5
    residual, logical = cadence.apply_ideal_qec(0b0000011)
    assert logical and bin(residual).count("1") == 3


def test_noise_decomposition():
    r = cadence.bit_error_rates(1.5e-4)
    assert r.eps_g == pytest.approx(1e-4, rel=1e-15)
    assert r.eps_c == pytest.approx(4e-5, rel=1e-15)


def test_model():
    assert cadence.gamma(3, 0.1) == pytest.approx(0.21)
    assert cadence.gamma3(3, 0.1) == pytest.approx(0.1)
    assert cadence.pl_second_order(cadence.AbstractRates(eps_g=1e-3), 10, 1) == pytest.approx(2.1e-4)
    reference = cadence.rates_at(3.45, 0.61, 0.4, 0.4, 1e-4)
    assert cadence.d_over_c1(reference) == pytest.approx(40.67)
    assert cadence.m_min(reference) == 6
    rows = cadence.table_contributions(reference, 1000, 5)
    assert len(rows) == 15
    assert sum(r[3] for r in rows) == pytest.approx(cadence.pl_second_order(reference, 1000, 5), rel=1e-12)
    r = cadence.AbstractRates(1e-3, 0.3, 1e-3, 1e-3, 1e-3, 1e-3)
    assert cadence.pairwise_fault_oracle(r, 6, 2) == pytest.approx(cadence.pl_second_order(r, 6, 2), rel=1e-6)
    with pytest.raises(ValueError):
        cadence.gamma(3, 1.0)


def test_monte_carlo_and_determinism():
    a = cadence.estimate_pl_mc(100, 5, 1e-3, 0.3, shots=20000, seed=4, threads=1)
    b = cadence.estimate_pl_mc(100, 5, 1e-3, 0.3, shots=20000, seed=4, threads=2)
    assert a == b
    assert a["ci_low"] <= a["p_hat"] <= a["ci_high"]
    assert cadence.estimate_pl_mc(100, 5, 0.0, shots=1000)["failures"] == 0


def test_abort_maps_to_exception():
    with pytest.raises(cadence.SimulationAbort):
        cadence.estimate_pl_mc(10, 1, 0.6, shots=100, ancilla="plus_verified", retry_cap=1)


def test_calibration_record():
    rec = cadence.calibrate([1e-3, 5e-3], shots=20000, seed=2)
    assert rec["normalization"] == "per_qubit"
    assert len(rec["points"]) == 2
    assert rec["coefficients"]["c"] == 0.4
    assert rec["slope_sd"] > 0


def test_sweep_csv():
    cfg = {"N": 100, "m": [1, 5], "eps_g": [1e-3], "shots": 2000, "master_seed": 5, "rates": {"source": "reference"}}
    text = cadence.sweep_csv(cfg)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 2
    assert list(rows[0].keys())[-1] == "seed"
    assert math.isclose(float(rows[0]["eps_g"]), 1e-3)
    assert text == cadence.sweep_csv(cfg, threads=3)
    with pytest.raises(ValueError):
        cadence.sweep_csv({"N": 100, "m": [3]})


def test_self_check():
    assert all(passed for _, passed, _ in cadence.self_check())
