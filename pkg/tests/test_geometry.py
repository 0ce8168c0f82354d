import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dubins_intercept.errors import DomainError
from dubins_intercept.geometry import (
    TWO_PI,
    Configuration,
    angle_abs,
    angles_equal,
    arctan2_paper,
    config_distance,
    fold_turn,
    metric,
    real_mod,
    sgn,
)


@pytest.mark.parametrize(
    "a,b,expected",
    [
        (5.0, 3.0, 2.0),
        (-0.5, TWO_PI, TWO_PI - 0.5),
        (TWO_PI, TWO_PI, 0.0),
        (-3.0, 3.0, 0.0),
        (7.5, 2.5, 0.0),
    ],
)
def test_real_mod(a, b, expected):
    assert real_mod(a, b) == pytest.approx(expected, abs=1e-12)


def test_real_mod_stays_below_modulus():
    r = real_mod(np.array([-1e-20, -1e-17, 1e-17, TWO_PI * (1 - 1e-17)]), TWO_PI)
    assert np.all(r >= 0.0)
    assert np.all(r < TWO_PI)


@pytest.mark.parametrize("b", [0.0, -1.0])
def test_real_mod_rejects_bad_modulus(b):
    with pytest.raises(DomainError):
        real_mod(1.0, b)


def test_real_mod_scalar_in_scalar_out():
    assert isinstance(real_mod(1.0, 3.0), float)
    assert real_mod(np.array([1.0, 4.0]), 3.0).shape == (2,)


@pytest.mark.parametrize(
    "y,x,expected",
    [
        (0.0, 1.0, 0.0),
        (1.0, 0.0, math.pi / 2),
        (0.0, -1.0, math.pi),
        (-1.0, 0.0, 3 * math.pi / 2),
        (1.0, 1.0, math.pi / 4),
        (-1.0, 1.0, 7 * math.pi / 4),
    ],
)
def test_arctan2_paper(y, x, expected):
    assert arctan2_paper(y, x) == pytest.approx(expected, abs=1e-12)


def test_arctan2_paper_range(rng):
    y, x = rng.normal(size=(2, 1000))
    theta = arctan2_paper(y, x)
    assert np.all((theta >= 0.0) & (theta < TWO_PI))
    assert_allclose(np.cos(theta), x / np.hypot(x, y), atol=1e-10)
    assert_allclose(np.sin(theta), y / np.hypot(x, y), atol=1e-10)


def test_arctan2_paper_origin():
    with pytest.raises(DomainError):
        arctan2_paper(0.0, 0.0)
    out = arctan2_paper(np.array([0.0, 1.0]), np.array([0.0, 0.0]))
    assert math.isnan(out[0])
    assert out[1] == pytest.approx(math.pi / 2)


def test_fold_turn():
    assert fold_turn(TWO_PI - 1e-12) == 0.0
    assert fold_turn(1.0) == 1.0
    assert_allclose(fold_turn(np.array([0.0, TWO_PI - 1e-10, 3.0])), [0.0, 0.0, 3.0])


def test_angle_abs_and_equality():
    assert angle_abs(TWO_PI - 0.1) == pytest.approx(0.1)
    assert angle_abs(-math.pi) == pytest.approx(math.pi)
    assert angles_equal(0.5, 0.5 + 3 * TWO_PI)
    assert not angles_equal(0.5, 0.6)


def test_metric():
    assert metric(Configuration(0, 0, 0), Configuration(3, 4, TWO_PI)) == pytest.approx(5.0)
    assert metric(Configuration(0, 0, 0.2), Configuration(0, 0, -0.2)) == pytest.approx(0.4)
    assert metric(Configuration(1, 2, 3), Configuration(1, 2, 3 - 4 * math.pi)) == pytest.approx(0.0, abs=1e-12)


def test_config_distance_broadcasts():
    d = config_distance(np.array([0.0, 3.0]), 0.0, 0.0, 0.0, np.array([0.0, 4.0]), 0.0)
    assert_allclose(d, [0.0, 5.0])


def test_sgn():
    assert [sgn(-2.0), sgn(0.0), sgn(0.5)] == [-1, 0, 1]


def test_metric_triangle_inequality(rng):
    pts = rng.uniform([-5, -5, -3 * math.pi], [5, 5, 3 * math.pi], size=(1000, 3, 3))
    for p, q, r in pts:
        a, b, c = Configuration(*p), Configuration(*q), Configuration(*r)
        assert metric(a, c) <= metric(a, b) + metric(b, c) + 1e-12


@pytest.mark.parametrize("phi", [0.0, 0.3, 1.0, math.pi - 1e-3, 2.5, 5.9])
def test_angle_abs_is_even_and_periodic(phi):
    expected = angle_abs(phi)
    assert angle_abs(-phi) == pytest.approx(expected, abs=1e-12)
    for k in range(-3, 4):
        assert angle_abs(phi + k * TWO_PI) == pytest.approx(expected, abs=1e-12)
