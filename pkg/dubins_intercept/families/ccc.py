"""
The four CCC residual families (LRL and RLR, each with the middle arc
either at most π long, mu = +1, or longer than π, mu = -1).

    xi   = (s*x + 1 - sin(phi)) / 2
    eta  = (y + s*cos(phi)) / 2
    rho2 = xi^2 + eta^2 = 2 - 2*cos(tau2 - tau1)

so the chain is defined only for 0 < rho2 <= 4.
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
class CccIntermediates:
    xi: float
    eta: float
    rho2: float
    C: float
    S: float
    theta1: float
    theta2: float


def ccc_chain(s: int, mu: int, x, y, phi) -> dict[str, np.ndarray]:
    """Vectorised CCC chain; every entry is NaN where the chain is undefined"""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    phi = np.asarray(phi, dtype=float)
    xi = 0.5 * (s * x + 1.0 - np.sin(phi))
    eta = 0.5 * (y + s * np.cos(phi))
    rho2 = xi**2 + eta**2
    defined = (rho2 <= 4.0 + DOMAIN_SLACK) & (rho2 > RHO2_EPS)
    c = np.clip(1.0 - 0.5 * rho2, -1.0, 1.0)
    q = np.sqrt(1.0 - c * c)
    with np.errstate(invalid="ignore", divide="ignore"):
        C = np.where(defined, mu * eta * q / rho2 + 0.5 * xi, np.nan)
        S = np.where(defined, -mu * xi * q / rho2 + 0.5 * eta, np.nan)
    theta1 = np.where(defined, np.asarray(fold_turn(arctan2_paper(S, C))), np.nan)
    middle = -math.pi * (mu - 1) + mu * np.arccos(c)
    theta2 = theta1 + middle
    return {"xi": xi, "eta": eta, "rho2": rho2, "C": C, "S": S, "theta1": theta1, "theta2": theta2}


def ccc_intermediates(T: float, s: TurnSign, mu: TurnSign, e_t: Configuration) -> CccIntermediates | None:
    """CCC chain at one time

    Args:
      T: Interception time (the chain depends on T only through ``e_t``)
      s: Direction of the outer arcs
      mu: +1 selects a middle arc in [0, π], -1 one in (π, 2π)
      e_t: Target configuration at T

    Returns:
      CccIntermediates, or None where rho2 > 4 or rho2 = 0
    """
    check_turn_sign(s, "s")
    check_turn_sign(mu, "mu")
    chain = ccc_chain(s, mu, e_t.x, e_t.y, e_t.phi)
    if np.isnan(chain["theta1"]):
        return None
    return CccIntermediates(**{k: float(v) for k, v in chain.items()})


def ccc_residual_arrays(s: int, mu: int, T, x, y, phi) -> np.ndarray:
    chain = ccc_chain(s, mu, x, y, phi)
    arg = s * (np.asarray(phi) - HALF_PI) - 2.0 * chain["theta1"] + chain["theta2"]
    wrap = np.asarray(fold_turn(real_mod(arg, TWO_PI)))
    return -np.asarray(T, dtype=float) + chain["theta2"] + wrap


def residual_ccc(T: float, s: TurnSign, mu: TurnSign, e: TargetTrajectory) -> float | None:
    """F_CCC(T) = -T + theta2 + mod(s*(phi_E - π/2) - 2*theta1 + theta2, 2π)

    Returns:
      The residual, or None where the chain is undefined
    """
    return CccFamily(check_turn_sign(s, "s"), check_turn_sign(mu, "mu")).residual(T, e)


@dataclass(frozen=True)
class CccFamily(ResidualFamily):
    kind = "CCC"
    s: TurnSign
    mu: TurnSign

    @property
    def label(self) -> str:
        return f"CCC({sign_label(self.s)},{sign_label(self.mu)})"

    @property
    def path_name(self) -> str:
        outer = "L" if self.s > 0 else "R"
        inner = "R" if self.s > 0 else "L"
        middle = "short" if self.mu > 0 else "long"
        return f"{outer}{inner}{outer}-{middle}"

    @property
    def signs(self) -> tuple[int, ...]:
        return (self.s, self.mu)

    def residual_arrays(self, T, x, y, phi):
        return ccc_residual_arrays(self.s, self.mu, T, x, y, phi)

    def recover(self, T: float, e: TargetTrajectory) -> ControlSchedule:
        """Switch times tau1 = theta1(T), tau2 = theta2(T)

        Raises:
          InconsistentRootError: The chain is undefined at T
        """
        inter = ccc_intermediates(T, self.s, self.mu, e(T))
        if inter is None:
            raise InconsistentRootError(f"{self.label} is undefined at T={T}")
        tau1, tau2 = inter.theta1, inter.theta2
        if tau2 > T and math.isclose(tau2, T, rel_tol=0.0, abs_tol=1e-7):
            shift = tau2 - T
            tau2 = T
            tau1 = max(0.0, tau1 - shift)
        return ControlSchedule.ccc(self.s, tau1, tau2)

    def mirrored(self) -> "CccFamily":
        # mu selects the middle-arc length, which reflection preserves
        return CccFamily(-self.s, self.mu)


LrlShort = CccFamily(1, 1)
LrlLong = CccFamily(1, -1)
RlrShort = CccFamily(-1, 1)
RlrLong = CccFamily(-1, -1)
