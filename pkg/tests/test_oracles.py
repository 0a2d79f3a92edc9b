"""Independent verification oracles: Monte Carlo and brute-force sweeps."""

import math

import numpy as np
import pytest

from cogregions.channel import ChannelParams
from cogregions.oracles import (
    degradedness_check,
    mc_rate_check,
    verify_condition5,
    verify_condition6,
    verify_th3_capacity,
)


# ------------------------------------------------------- Monte Carlo checks


def test_mc_rate_check_coherent_combining():
    cov = [[1.0, math.sqrt(0.5)], [math.sqrt(0.5), 1.0]]
    report = mc_rate_check([3.0, 1.0], cov, n_samples=200_000, seed=5)
    assert report.passed
    assert report.worst_case["closed_form"] == pytest.approx(
        15.242640687119284, abs=1e-12
    )


def test_mc_rate_check_fully_correlated_inputs():
    report = mc_rate_check([3.0, 1.0], [[1.0, 1.0], [1.0, 1.0]], n_samples=200_000)
    assert report.passed
    assert report.worst_case["closed_form"] == pytest.approx(17.0, abs=1e-12)


def test_mc_rate_check_noise_only():
    report = mc_rate_check([0.0, 0.0], np.eye(2), n_samples=50_000, seed=3)
    assert report.passed
    assert report.worst_case["closed_form"] == 1.0


def test_mc_rate_check_validation():
    with pytest.raises(ValueError) as err:
        mc_rate_check([1.0, 1.0], [[1.0, 2.0], [2.0, 1.0]], n_samples=50_000)
    assert str(err.value) == "covariance must be positive semidefinite"
    with pytest.raises(ValueError) as err:
        mc_rate_check([1.0, 1.0], np.eye(2), n_samples=500)
    assert str(err.value) == "n_samples must be at least 10000"
    with pytest.raises(ValueError) as err:
        mc_rate_check([1.0, 1.0], np.eye(3), n_samples=50_000)
    assert str(err.value) == "covariance shape must match the gain vector"


def test_mc_rate_check_is_deterministic_per_seed():
    cov = np.eye(2)
    first = mc_rate_check([1.0, 2.0], cov, n_samples=50_000, seed=11)
    second = mc_rate_check([1.0, 2.0], cov, n_samples=50_000, seed=11)
    third = mc_rate_check([1.0, 2.0], cov, n_samples=50_000, seed=12)
    assert first.max_discrepancy == second.max_discrepancy
    assert first.max_discrepancy != third.max_discrepancy


def test_degradedness_check_strong_gain():
    report = degradedness_check(
        ChannelParams(a=0.5, b=2.0, p1=1.0, p2=1.0), n_samples=200_000, seed=1
    )
    assert report.passed, report.worst_case
    assert report.tolerance == 5.0


def test_degradedness_check_boundary_gain_has_exact_noise_budget():
    # At |b| = 1 the reconstruction needs no extra noise at all.
    report = degradedness_check(
        ChannelParams(a=0.0, b=1.0, p1=2.0, p2=3.0), n_samples=200_000, seed=2
    )
    assert report.passed, report.worst_case


def test_degradedness_check_reports_received_variance():
    report = degradedness_check(
        ChannelParams(a=0.5, b=2.0, p1=1.0, p2=1.0), n_samples=200_000
    )
    assert report.worst_case["var_y1_closed_form"] == pytest.approx(2.25, abs=1e-12)


def test_degradedness_check_correlated_inputs():
    report = degradedness_check(
        ChannelParams(a=0.5, b=3.0, p1=4.0, p2=2.0),
        n_samples=200_000,
        seed=4,
        input_rho=0.7,
    )
    assert report.passed, report.worst_case
    assert report.worst_case["input_rho"] == 0.7


def test_degradedness_check_validation():
    with pytest.raises(ValueError) as err:
        degradedness_check(ChannelParams(a=0.0, b=0.5, p1=1.0, p2=1.0))
    assert str(err.value) == "construction requires |b| ≥ 1"
    with pytest.raises(ValueError) as err:
        degradedness_check(
            ChannelParams(a=0.0, b=2.0, p1=1.0, p2=1.0), input_rho=1.5
        )
    assert str(err.value) == "input_rho must lie in [-1, 1], got 1.5"
    with pytest.raises(ValueError) as err:
        degradedness_check(ChannelParams(a=0.0, b=2.0, p1=1.0, p2=1.0), n_samples=99)
    assert str(err.value) == "n_samples must be at least 10000"


# --------------------------------------------- sum-redundancy biconditionals


def test_condition5_below_threshold():
    report = verify_condition5(1.0, 3.0, 1.5)
    assert report.passed
    assert report.max_discrepancy == 0.0
    assert report.worst_case["sweep_holds"] is False
    assert report.worst_case["threshold_holds"] is False
    assert report.worst_case["threshold"] == 2.0


def test_condition5_far_above_threshold():
    report = verify_condition5(5.0, 5.0, 10.0)
    assert report.passed
    assert report.worst_case["sweep_holds"] is True
    assert report.worst_case["threshold_holds"] is True


def test_condition5_boundary_counterexample():
    # Exactly at b = sqrt(p2 + 1) the threshold side claims redundancy but
    # the sweep finds interior power splits whose corner sum exceeds the sum
    # cap.  The biconditional genuinely fails here; the oracle must say so.
    report = verify_condition5(1.0, 3.0, 2.0)
    assert not report.passed
    assert report.max_discrepancy == 1.0
    assert report.worst_case["threshold_holds"] is True
    assert report.worst_case["sweep_holds"] is False
    assert report.worst_case["max_corner_excess_bits"] == pytest.approx(
        0.134726995283577, abs=1e-9
    )


def test_condition5_grid_validation():
    with pytest.raises(ValueError) as err:
        verify_condition5(1.0, 1.0, 3.0, alpha_grid=np.array([]))
    assert str(err.value) == "empty grid"
    with pytest.raises(ValueError) as err:
        verify_condition5(1.0, 1.0, 3.0, alpha_grid=np.array([0.0, 1.5]))
    assert str(err.value) == "alpha grid values must lie in [0, 1]"


def test_condition6_strong_gain():
    report = verify_condition6(1.0, 1.0, 3.0)
    assert report.passed
    assert report.max_discrepancy == 0.0
    assert report.worst_case["sweep_holds"] is True
    assert report.worst_case["quadratic_form_holds"] is True


def test_condition6_just_above_threshold():
    threshold = math.sqrt(3.0) + 1.0
    report = verify_condition6(1.0, 1.0, 2.7321)
    assert report.passed
    assert report.worst_case["threshold"] == pytest.approx(threshold, abs=1e-12)


def test_condition6_below_threshold_all_sides_agree():
    report = verify_condition6(5.0, 5.0, 10.0)
    assert report.passed
    assert report.worst_case["sweep_holds"] is False
    assert report.worst_case["threshold_holds"] is False
    assert report.worst_case["quadratic_form_holds"] is False


def test_condition6_threshold_equals_quadratic_root():
    # The closed-form threshold is the positive root of the quadratic form,
    # so crossing it flips both sides together.
    rng = np.random.default_rng(31)
    for _ in range(100):
        p1 = 0.1 + 10.0 * rng.random()
        p2 = 0.1 + 10.0 * rng.random()
        b = 0.5 + 12.0 * rng.random()
        report = verify_condition6(p1, p2, b, beta_grid=201)
        assert report.passed, (p1, p2, b, report.worst_case)


# --------------------------------------------------- capacity identity check


def test_th3_capacity_identity_holds():
    for b in (3.0, 10.0):
        report = verify_th3_capacity(1.0, 1.0, b)
        assert report.passed, report.worst_case
        assert report.max_discrepancy <= 1.0
        assert report.worst_case["rate_cap_identity_bits"] <= 1e-12
        assert report.worst_case["sum_constraint_excess_bits"] <= 1e-12
        assert report.worst_case["frontier_gap_bits"] <= 1e-9


def test_th3_capacity_requires_regime():
    with pytest.raises(ValueError) as err:
        verify_th3_capacity(1.0, 1.0, 2.0)
    assert str(err.value) == "not in Theorem-3 regime"
    with pytest.raises(ValueError) as err:
        verify_th3_capacity(1.0, 1.0, 3.0, alpha_grid=1)
    assert str(err.value) == "grid resolution must be at least 2"


def test_th3_capacity_explicit_axis():
    report = verify_th3_capacity(2.0, 1.0, 5.0, alpha_grid=np.linspace(0.0, 1.0, 201))
    assert report.passed, report.worst_case
    assert report.n == 201
