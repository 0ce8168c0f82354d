"""
The four CSC residual families (LSL, LSR, RSL, RSR).

Writing the interception conditions for a CSC trajectory in terms of the
target configuration E(T) = (x, y, phi) gives

    xi   = s*x + 1 - s*sigma*sin(phi)
    eta  = y + sigma*cos(phi)
    rho2 = xi^2 + eta^2 = (1 - s*sigma)^2 + (tau2 - tau1)^2

from which tau1 and tau2 follow in closed form and the remaining heading
condition becomes the scalar residual F(T) whose roots are interception
times.
"""

import math
from dataclasses import dataclass

import numpy as np

from .family_base import DOMAIN_SLACK, RHO2_EPS, ResidualFamily, sign_label
from ..errors import InconsistentRootError
from ..geometry import HALF_PI, TWO_PI, Configuration, arctan2_paper, fold_turn, real_mod
from ..motion import ControlSchedule, TurnSign, check_turn_sign
from ..targets import TargetTrajectory


@dataclass(frozen=True)
class CscIntermediates:
    xi: float
    eta: float
    rho2: float
    C: float
    S: float
    theta1: float
    theta2: float


def csc_chain(s: int, sigma: int, x, y, phi) -> dict[str, np.ndarray]:
    """Vectorised CSC chain; every entry is NaN where the chain is undefined"""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    phi = np.asarray(phi, dtype=float)
    a = 1.0 - s * sigma
    xi = s * x + 1.0 - s * sigma * np.sin(phi)
    eta = y + sigma * np.cos(phi)
    rho2 = xi**2 + eta**2
    gap = rho2 - a * a
    defined = (gap >= -DOMAIN_SLACK) & (rho2 > RHO2_EPS)
    with np.errstate(invalid="ignore", divide="ignore"):
        b = np.sqrt(np.maximum(gap, 0.0))
        C = np.where(defined, (eta * b + a * xi) / rho2, np.nan)
        S = np.where(defined, (-xi * b + a * eta) / rho2, np.nan)
    theta1 = np.asarray(fold_turn(arctan2_paper(S, C)))
    theta1 = np.where(defined, theta1, np.nan)
    theta2 = theta1 + np.where(defined, b, np.nan)
    return {"xi": xi, "eta": eta, "rho2": rho2, "C": C, "S": S, "theta1": theta1, "theta2": theta2}


def csc_intermediates(T: float, s: TurnSign, sigma: TurnSign, e_t: Configuration) -> CscIntermediates | None:
    """CSC chain at one time

    Args:
      T: Interception time (the chain depends on T only through ``e_t``)
      s: First-arc direction
      sigma: Last-arc direction
      e_t: Target configuration at T

    Returns:
      CscIntermediates, or None where rho2 < (1 - s*sigma)^2 or rho2 = 0
    """
    check_turn_sign(s, "s")
    check_turn_sign(sigma, "sigma")
    chain = csc_chain(s, sigma, e_t.x, e_t.y, e_t.phi)
    if np.isnan(chain["theta1"]):
        return None
    return CscIntermediates(**{k: float(v) for k, v in chain.items()})


def csc_residual_arrays(s: int, sigma: int, T, x, y, phi) -> np.ndarray:
    chain = csc_chain(s, sigma, x, y, phi)
    wrap = np.asarray(fold_turn(real_mod(sigma * (np.asarray(phi) - HALF_PI) - s * sigma * chain["theta1"], TWO_PI)))
    return -np.asarray(T, dtype=float) + chain["theta2"] + wrap


def residual_csc(T: float, s: TurnSign, sigma: TurnSign, e: TargetTrajectory) -> float | None:
    """F_CSC(T) = -T + theta2 + mod(sigma*(phi_E - π/2) - s*sigma*theta1, 2π)

    Returns:
      The residual, or None where the chain is undefined
    """
    return CscFamily(check_turn_sign(s, "s"), check_turn_sign(sigma, "sigma")).residual(T, e)


@dataclass(frozen=True)
class CscFamily(ResidualFamily):
    kind = "CSC"
    s: TurnSign
    sigma: TurnSign

    @property
    def label(self) -> str:
        return f"CSC({sign_label(self.s)},{sign_label(self.sigma)})"

    @property
    def path_name(self) -> str:
        turn = {1: "L", -1: "R"}
        return f"{turn[self.s]}S{turn[self.sigma]}"

    @property
    def signs(self) -> tuple[int, ...]:
        return (self.s, self.sigma)

    def residual_arrays(self, T, x, y, phi):
        return csc_residual_arrays(self.s, self.sigma, T, x, y, phi)

    def recover(self, T: float, e: TargetTrajectory) -> ControlSchedule:
        """Switch times tau1 = theta1(T), tau2 = theta2(T)

        Raises:
          InconsistentRootError: The chain is undefined at T
        """
        inter = csc_intermediates(T, self.s, self.sigma, e(T))
        if inter is None:
            raise InconsistentRootError(f"{self.label} is undefined at T={T}")
        tau1, tau2 = inter.theta1, inter.theta2
        if tau2 > T and math.isclose(tau2, T, rel_tol=0.0, abs_tol=1e-7):
            # the final arc has zero length at this root
            tau2 = T
            tau1 = min(tau1, T)
        return ControlSchedule.csc(self.s, self.sigma, tau1, tau2)

    def mirrored(self) -> "CscFamily":
        return CscFamily(-self.s, -self.sigma)


Lsl = CscFamily(1, 1)
Lsr = CscFamily(1, -1)
Rsl = CscFamily(-1, 1)
Rsr = CscFamily(-1, -1)
