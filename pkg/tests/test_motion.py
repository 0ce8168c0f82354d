import math

import numpy as np
import pytest

from conftest import random_schedule
from dubins_intercept.errors import DomainError
from dubins_intercept.geometry import START, Configuration, metric
from dubins_intercept.motion import (
    ControlSchedule,
    advance_arrays,
    ccc_endpoint,
    control_at,
    csc_endpoint,
    endpoint,
    integrate_ode,
    integrate_pieces,
    sample_trajectory,
)


def assert_config(actual: Configuration, expected: tuple, tol: float = 1e-12):
    assert metric(actual, Configuration(*expected)) <= tol


def test_straight_ahead():
    assert_config(csc_endpoint(1, 1, 0.0, 4.0, 4.0), (0.0, 4.0, math.pi / 2))


def test_quarter_left_turn():
    assert_config(csc_endpoint(1, 1, math.pi / 2, math.pi / 2, math.pi / 2), (-1.0, 1.0, math.pi))


def test_quarter_right_turn():
    assert_config(csc_endpoint(-1, -1, math.pi / 2, math.pi / 2, math.pi / 2), (1.0, 1.0, 0.0))


def test_ccc_half_circle():
    # with tau1 = tau2 = 0 the whole time is spent on the last left arc
    assert_config(ccc_endpoint(1, 0.0, 0.0, math.pi), (-2.0, 0.0, 3 * math.pi / 2))


def test_zero_time_is_start():
    assert_config(csc_endpoint(-1, 1, 0.0, 0.0, 0.0), START.as_tuple())
    assert_config(ccc_endpoint(-1, 0.0, 0.0, 0.0), START.as_tuple())


@pytest.mark.parametrize("tau1,tau2,t", [(2.0, 1.0, 3.0), (0.0, 4.0, 3.0), (-0.1, 1.0, 2.0)])
def test_csc_endpoint_ordering(tau1, tau2, t):
    with pytest.raises(DomainError):
        csc_endpoint(1, 1, tau1, tau2, t)


def test_ccc_endpoint_middle_arc():
    with pytest.raises(DomainError):
        ccc_endpoint(1, 0.5, 0.5 + 2 * math.pi, 10.0)


def test_bad_turn_sign():
    with pytest.raises(DomainError):
        csc_endpoint(0, 1, 0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        ControlSchedule.ccc(2, 0.0, 1.0)


def test_schedule_validation():
    with pytest.raises(DomainError):
        ControlSchedule.csc(1, 1, 2 * math.pi, 7.0)
    with pytest.raises(DomainError):
        ControlSchedule.ccc(1, 1.0, 1.0 + 2 * math.pi)
    with pytest.raises(DomainError):
        ControlSchedule("CCC", 1, 1, 0.0, 1.0)


def test_schedule_pieces_and_controls():
    sched = ControlSchedule.csc(1, -1, 1.0, 3.0)
    assert sched.pieces(5.0) == [(1.0, 1), (2.0, 0), (2.0, -1)]
    assert sched.pieces(2.0) == [(1.0, 1), (1.0, 0)]
    assert [control_at(sched, t) for t in (0.0, 1.0, 2.9, 3.0)] == [1, 0, 0, -1]
    ccc = ControlSchedule.ccc(-1, 1.0, 2.0)
    assert ccc.rates() == (-1, 1, -1)


def test_endpoint_before_switches_is_prefix():
    sched = ControlSchedule.csc(1, 1, 1.0, 2.0)
    assert_config(endpoint(sched, 0.5), csc_endpoint(1, 1, 0.5, 0.5, 0.5).as_tuple())
    assert_config(endpoint(sched, 1.5), csc_endpoint(1, 1, 1.0, 1.5, 1.5).as_tuple())


@pytest.mark.parametrize("kind", ["CSC", "CCC"])
def test_mirrored_schedule_reflects_path(rng, kind):
    for _ in range(20):
        sched, t = random_schedule(rng, kind)
        p = endpoint(sched, t)
        q = endpoint(sched.mirrored(), t)
        assert_config(q, (-p.x, p.y, math.pi - p.phi), 1e-9)


@pytest.mark.parametrize("kind", ["CSC", "CCC"])
def test_closed_form_matches_integration(rng, kind):
    for _ in range(10):
        sched, t = random_schedule(rng, kind)
        assert metric(endpoint(sched, t), integrate_ode(sched, t, 1e-3)) <= 1e-7


@pytest.mark.slow
def test_closed_form_matches_integration_batch(rng):
    worst = 0.0
    for i in range(1000):
        sched, t = random_schedule(rng, "CSC" if i % 2 else "CCC")
        worst = max(worst, metric(endpoint(sched, t), integrate_ode(sched, t, 1e-4)))
    assert worst <= 1e-7


def test_advance_arrays_matches_closed_form():
    x, y, phi = advance_arrays(START.x, START.y, START.phi, 1, 0.7)
    x, y, phi = advance_arrays(x, y, phi, 0, 1.3)
    x, y, phi = advance_arrays(x, y, phi, -1, 0.4)
    assert_config(Configuration(float(x), float(y), float(phi)), csc_endpoint(1, -1, 0.7, 2.0, 2.4).as_tuple())


def test_integrate_pieces_rejects_bad_step():
    with pytest.raises(DomainError):
        integrate_pieces([(1.0, 0)], 0.0)


def test_sample_trajectory():
    sched = ControlSchedule.csc(1, 1, 0.0, 4.0)
    samples = sample_trajectory(sched, 4.0, 5)
    assert [s.t for s in samples] == pytest.approx([0.0, 1.0, 2.0, 3.0, 4.0])
    assert [s.config.y for s in samples] == pytest.approx([0.0, 1.0, 2.0, 3.0, 4.0])
    assert {s.u for s in samples} <= {-1, 0, 1}
    with pytest.raises(DomainError):
        sample_trajectory(sched, 4.0, 1)


def test_endpoint_arrays_broadcast():
    from dubins_intercept.motion import csc_endpoint_arrays

    t = np.linspace(0.0, 3.0, 4)
    x, y, phi = csc_endpoint_arrays(1, 1, 0.0, t, t)
    np.testing.assert_allclose(y, t)
    np.testing.assert_allclose(x, 0.0, atol=1e-15)


def test_full_left_circle_returns_to_start():
    assert_config(csc_endpoint(1, 1, 2 * math.pi, 2 * math.pi, 2 * math.pi), START.as_tuple(), 1e-9)


@pytest.mark.parametrize("s,sigma", [(1, 1), (1, -1), (-1, 1), (-1, -1)])
def test_full_first_circle_is_invisible(rng, s, sigma):
    for _ in range(20):
        tau2 = float(rng.uniform(2 * math.pi, 4 * math.pi))
        t = tau2 + float(rng.uniform(0.0, 2 * math.pi))
        looped = csc_endpoint(s, sigma, 2 * math.pi, tau2, t)
        direct = csc_endpoint(s, sigma, 0.0, tau2 - 2 * math.pi, t - 2 * math.pi)
        assert metric(looped, direct) <= 1e-9


@pytest.mark.parametrize("s", [1, -1])
def test_csc_without_straight_is_ccc_without_middle(rng, s):
    for _ in range(20):
        tau1 = float(rng.uniform(0.0, 2 * math.pi))
        t = tau1 + float(rng.uniform(0.0, 2 * math.pi))
        assert metric(csc_endpoint(s, s, tau1, tau1, t), ccc_endpoint(s, tau1, tau1, t)) <= 1e-9


def test_csc_heading(rng):
    for _ in range(20):
        s, sigma = (int(v) for v in rng.choice([-1, 1], size=2))
        tau1 = float(rng.uniform(0.0, 2 * math.pi))
        tau2 = tau1 + float(rng.uniform(0.0, 3.0))
        t = tau2 + float(rng.uniform(0.0, 2 * math.pi))
        c = csc_endpoint(s, sigma, tau1, tau2, t)
        assert metric(Configuration(0.0, 0.0, c.phi), Configuration(0.0, 0.0, math.pi / 2 + s * tau1 + sigma * (t - tau2))) <= 1e-9
