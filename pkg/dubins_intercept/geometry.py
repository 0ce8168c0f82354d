"""Geometry module

Arithmetic on the circle, the configuration metric on the plane times the
circle, and the two-branch arctan2 used by the residual chains. Every
function here accepts plain floats or numpy arrays; array inputs produce
array outputs of the broadcast shape.
"""

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .errors import DomainError

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi

# Tolerance (radians) for equality of angles on the circle
ANGLE_TOL = 1e-9

ArrayLike = float | npt.NDArray[np.float64]


@dataclass(frozen=True)
class Configuration:
    """
    A point of the plane times the circle. Lengths are in units of the
    minimum turn radius, the heading is measured counterclockwise from the
    x-axis in radians and is stored unnormalised.
    """

    x: float
    y: float
    phi: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.phi)


START = Configuration(0.0, 0.0, HALF_PI)


def _unwrap(value, result):
    if np.ndim(result) == 0 and np.ndim(value) == 0:
        return float(result)
    return result


def real_mod(a: ArrayLike, b: float) -> ArrayLike:
    """Floor-based modulus

    Computes a - b*floor(a/b). Rounding can push the result onto b itself
    or just below zero; both are folded back into [0, b).

    Args:
      a: Dividend, scalar or array
      b: Positive modulus

    Returns:
      Remainder in [0, b), same shape as ``a``

    Raises:
      DomainError: b is not positive
    """
    if not b > 0.0:
        raise DomainError(f"real_mod requires a positive modulus, got {b}")
    a_arr = np.asarray(a, dtype=float)
    r = a_arr - b * np.floor(a_arr / b)
    r = np.where(r < 0.0, r + b, r)
    r = np.where(r >= b, 0.0, r)
    return _unwrap(a, r)


def fold_turn(m: ArrayLike) -> ArrayLike:
    """Fold a value of [0, 2π) lying within ANGLE_TOL of 2π onto 0"""
    m_arr = np.asarray(m, dtype=float)
    return _unwrap(m, np.where(m_arr > TWO_PI - ANGLE_TOL, 0.0, m_arr))


def angle_abs(phi: ArrayLike) -> ArrayLike:
    """Absolute value of an angle on the circle, in [0, π]"""
    m = np.asarray(real_mod(phi, TWO_PI))
    return _unwrap(phi, np.minimum(m, TWO_PI - m))


def angles_equal(a: float, b: float, tol: float = ANGLE_TOL) -> bool:
    """True when ``a`` and ``b`` name the same point of the circle"""
    return bool(angle_abs(a - b) <= tol)


def config_distance(x: ArrayLike, y: ArrayLike, phi: ArrayLike, x0: ArrayLike, y0: ArrayLike, phi0: ArrayLike) -> ArrayLike:
    """Component-wise form of :func:`metric` for broadcasting over arrays"""
    dphi = np.asarray(angle_abs(np.asarray(phi, dtype=float) - phi0))
    d = np.sqrt((np.asarray(x, dtype=float) - x0) ** 2 + (np.asarray(y, dtype=float) - y0) ** 2 + dphi**2)
    if np.ndim(d) == 0:
        return float(d)
    return d


def metric(p: Configuration, p0: Configuration) -> float:
    """Distance between two configurations

    Euclidean in position combined with the absolute heading difference
    on the circle.

    Args:
      p: First configuration
      p0: Second configuration

    Returns:
      float: Non-negative distance
    """
    return float(config_distance(p.x, p.y, p.phi, p0.x, p0.y, p0.phi))


def arctan2_paper(y: ArrayLike, x: ArrayLike) -> ArrayLike:
    """Two-branch arctangent with range [0, 2π)

    arccos(x/r) for y >= 0 and 2π - arccos(x/r) otherwise, where r is the
    length of (x, y). Array inputs return NaN where (x, y) = (0, 0).

    Args:
      y: Ordinate (sine-like component)
      x: Abscissa (cosine-like component)

    Returns:
      Angle in [0, 2π)

    Raises:
      DomainError: scalar call at the origin
    """
    y_arr = np.asarray(y, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    r = np.hypot(x_arr, y_arr)
    if np.ndim(r) == 0 and r == 0.0:
        raise DomainError("arctan2_paper is undefined at (0, 0)")
    with np.errstate(invalid="ignore", divide="ignore"):
        c = np.clip(x_arr / r, -1.0, 1.0)
    a = np.arccos(c)
    theta = np.where(y_arr >= 0.0, a, TWO_PI - a)
    theta = np.where(theta >= TWO_PI, 0.0, theta)
    theta = np.where(r == 0.0, np.nan, theta)
    if np.ndim(theta) == 0:
        return float(theta)
    return theta


def sgn(v: float) -> int:
    """Sign as an integer in {-1, 0, 1}"""
    return (v > 0) - (v < 0)
