"""
Residuals of the two cycled families, whose optimal trajectories end with
a full 2π circle: straight then circle (SC) and arc then opposite circle
(CC). Both residuals are configuration distances, so their roots are
touching zeros rather than sign changes.
"""

import math
from dataclasses import dataclass

import numpy as np

from .family_base import ResidualFamily
from ..errors import DomainError
from ..geometry import HALF_PI, TWO_PI, config_distance
from ..motion import ControlSchedule
from ..targets import TargetTrajectory


def _check_cycled_domain(T) -> None:
    if np.any(np.asarray(T) < TWO_PI - 1e-12):
        raise DomainError(f"Cycled residuals are defined for T >= 2π only, got T={T}")


def sc_residual_arrays(T, x, y, phi) -> np.ndarray:
    T = np.asarray(T, dtype=float)
    return np.asarray(config_distance(x, y, phi, 0.0, T - TWO_PI, HALF_PI))


def cc_locus_distance(sign: int, T, x, y, phi) -> np.ndarray:
    T = np.asarray(T, dtype=float)
    return np.asarray(config_distance(x, y, phi, (1.0 - np.cos(T)) * sign, np.sin(T), HALF_PI - T * sign))


def cc_residual_arrays(T, x, y, phi) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    pos = cc_locus_distance(1, T, x, y, phi)
    neg = cc_locus_distance(-1, T, x, y, phi)
    # sgn(0) is ambiguous, so both loci are candidates there
    return np.where(x > 0.0, pos, np.where(x < 0.0, neg, np.minimum(pos, neg)))


def residual_sc(T: float, e: TargetTrajectory) -> float:
    """F_SC(T) = metric(E(T), (0, T - 2π, π/2))

    Raises:
      DomainError: T < 2π
    """
    _check_cycled_domain(T)
    return float(Sc.residual_on(T, e))


def residual_cc(T: float, e: TargetTrajectory) -> float:
    """F_CC(T) = metric(E(T), ((1 - cos T)*sgn x_E, sin T, π/2 - T*sgn x_E))

    Where x_E(T) = 0 both signs are tried and the smaller distance is
    returned.

    Raises:
      DomainError: T < 2π
    """
    _check_cycled_domain(T)
    return float(Cc.residual_on(T, e))


@dataclass(frozen=True)
class ScFamily(ResidualFamily):
    kind = "SC"
    t_min = TWO_PI

    @property
    def label(self) -> str:
        return "SC"

    @property
    def path_name(self) -> str:
        return "SC"

    def residual_arrays(self, T, x, y, phi):
        return sc_residual_arrays(T, x, y, phi)

    def recover(self, T: float, e: TargetTrajectory) -> ControlSchedule:
        """Straight for T - 2π then a full left circle

        Any (s, sigma) would do; (+1, +1) is fixed for determinism.
        """
        _check_cycled_domain(T)
        return ControlSchedule.csc(1, 1, 0.0, max(0.0, T - TWO_PI))

    def mirrored(self) -> "ScFamily":
        return self


@dataclass(frozen=True)
class CcFamily(ResidualFamily):
    kind = "CC"
    t_min = TWO_PI

    @property
    def label(self) -> str:
        return "CC"

    @property
    def path_name(self) -> str:
        return "CC"

    def residual_arrays(self, T, x, y, phi):
        return cc_residual_arrays(T, x, y, phi)

    def achieving_sign(self, T: float, e: TargetTrajectory) -> int:
        """sgn x_E(T), or the sign of the nearer locus where x_E(T) = 0"""
        x, y, phi = (float(v) for v in e.evaluate(T))
        if x != 0.0:
            return 1 if x > 0.0 else -1
        pos = float(cc_locus_distance(1, T, x, y, phi))
        neg = float(cc_locus_distance(-1, T, x, y, phi))
        return 1 if pos <= neg else -1

    def recover(self, T: float, e: TargetTrajectory) -> ControlSchedule:
        """Arc of length T - 2π turning away from the target's side, then a full circle"""
        _check_cycled_domain(T)
        return ControlSchedule.ccc(self.achieving_sign(T, e), 0.0, max(0.0, T - TWO_PI))

    def mirrored(self) -> "CcFamily":
        return self


Sc = ScFamily()
Cc = CcFamily()
