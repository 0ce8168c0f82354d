import math

import pytest

from dubins_intercept.config import OracleSettings
from dubins_intercept.errors import DomainError
from dubins_intercept.geometry import Configuration, metric
from dubins_intercept.motion import csc_endpoint, endpoint, integrate_pieces
from dubins_intercept.oracle import brute_force_min_time, corrupt_result, verify_solution
from dubins_intercept.solver import solve
from dubins_intercept.targets import linear_uniform, rotating_point, static_target


def ahead(d: float):
    return static_target(Configuration(0.0, d, math.pi / 2))


def test_straight_ahead_default_grid():
    result = brute_force_min_time(ahead(4.0))
    assert result.T_approx == pytest.approx(3.96, abs=1e-9)
    assert result.achieved_distance <= math.hypot(0.05, 0.05)
    assert result.schedule.kind == "CSC"


def test_straight_ahead_fine_grid():
    settings = OracleSettings(tau_step=0.01, t_step=0.01, position_tol=0.01, heading_tol=0.01)
    result = brute_force_min_time(ahead(4.0), settings)
    assert abs(result.T_approx - 4.0) <= 0.02


def test_start_configuration():
    result = brute_force_min_time(static_target(Configuration(0.0, 0.0, math.pi / 2)))
    assert result.T_approx == 0.0


def test_forward_generated_target():
    target = csc_endpoint(1, -1, 0.4, 1.2, 2.0)
    result = brute_force_min_time(static_target(target))
    assert result.feasible
    assert result.T_approx <= 2.0 + 0.02
    # the oracle's own schedule lands within its tolerances
    reached = endpoint(result.schedule, result.T_approx)
    assert math.hypot(reached.x - target.x, reached.y - target.y) <= 0.05


def test_horizon_exhausted():
    result = brute_force_min_time(ahead(4.0), OracleSettings(horizon=2.0))
    assert not result.feasible
    assert result.schedule is None
    assert math.isinf(result.achieved_distance)


def test_exhaustive_mode():
    settings = OracleSettings(tau_step=0.05, t_step=0.05, exhaustive=True)
    result = brute_force_min_time(ahead(2.0), settings)
    assert 1.95 - 1e-9 <= result.T_approx <= 2.0 + 1e-9
    assert result.schedule is None
    assert len(result.pieces) == 3
    reached = integrate_pieces(list(result.pieces), 1e-3)
    assert math.hypot(reached.x, reached.y - 2.0) <= 0.05 + 1e-6


def test_exhaustive_half_circle():
    settings = OracleSettings(tau_step=0.05, t_step=0.05, position_tol=0.1, heading_tol=0.1, exhaustive=True)
    target = Configuration(-2.0, 0.0, 3 * math.pi / 2)
    result = brute_force_min_time(static_target(target), settings)
    assert result.feasible
    assert result.T_approx <= math.pi + 0.05


def test_verify_straight_ahead():
    e = ahead(4.0)
    report = verify_solution(e, solve(e))
    assert report.passed
    assert report.t_approx == pytest.approx(3.96, abs=1e-9)
    assert report.ode_gap <= 1e-7
    assert report.lines()[-1] == "PASS"


def test_verify_detects_corrupted_schedule(caplog):
    e = ahead(4.0)
    result = solve(e)
    bad = corrupt_result(result)
    assert bad.schedule.tau2 == pytest.approx(result.schedule.tau2 - 0.1)
    assert "Corrupting" in caplog.text
    report = verify_solution(e, bad)
    assert not report.passed
    assert not report.endpoint_ok
    assert any(m.startswith("endpoint mismatch") for m in report.messages)
    assert report.lines()[-1] == "FAIL"


def test_verify_requires_feasible_result():
    e = linear_uniform(Configuration(0.0, 10.0, math.pi / 2), 0.0, 2.0)
    with pytest.raises(DomainError):
        verify_solution(e, solve(e, horizon=10.0))


def test_agreement_window():
    assert OracleSettings().agreement_window == pytest.approx(0.09)
    with pytest.raises(DomainError):
        OracleSettings(t_step=0.0)


@pytest.mark.slow
def test_random_static_targets_agree(rng):
    failures = []
    for x, y, phi in rng.uniform([-6, -6, 0], [6, 6, 2 * math.pi], size=(200, 3)):
        e = static_target(Configuration(x, y, phi))
        result = solve(e)
        assert result.feasible
        report = verify_solution(e, result)
        if not report.passed:
            failures.append(((x, y, phi), report.messages))
    assert failures == []


@pytest.mark.slow
def test_rotating_point_agrees():
    e = rotating_point(3.0, 3.0, 1.0)
    result = solve(e)
    report = verify_solution(e, result)
    assert report.passed, report.messages
    assert metric(endpoint(result.schedule, result.t_star), e(result.t_star)) <= 1e-6
