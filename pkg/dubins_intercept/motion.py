"""Motion module

Bang-bang control schedules of the CSC and CCC families, their closed-form
endpoint maps and a fixed-step Runge-Kutta integrator of the car dynamics

    x' = cos(phi), y' = sin(phi), phi' = u, |u| <= 1

from the start configuration (0, 0, π/2). The closed forms are the
production path; the integrator exists to cross-check them.
"""

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError
from .geometry import TWO_PI, HALF_PI, START, ArrayLike, Configuration

TurnSign = Literal[-1, 1]
ScheduleKind = Literal["CSC", "CCC"]


def check_turn_sign(value: int, name: str = "turn sign") -> TurnSign:
    if value not in (-1, 1):
        raise DomainError(f"{name} must be -1 or +1, got {value}")
    return value


@dataclass(frozen=True)
class ControlSchedule:
    """
    A candidate bang-bang control. For CSC schedules the control is s on
    [0, tau1), 0 on [tau1, tau2) and sigma from tau2 on. For CCC schedules it
    is s, -s, s on the same intervals and sigma is None.
    """

    kind: ScheduleKind
    s: TurnSign
    sigma: TurnSign | None
    tau1: float
    tau2: float

    def __post_init__(self):
        if self.kind not in ("CSC", "CCC"):
            raise DomainError(f"Unknown schedule kind {self.kind}")
        check_turn_sign(self.s, "s")
        if self.kind == "CSC":
            check_turn_sign(self.sigma, "sigma")
        elif self.sigma is not None:
            raise DomainError("CCC schedules carry no sigma")
        if not 0.0 <= self.tau1 <= self.tau2:
            raise DomainError(f"Switch times must satisfy 0 <= tau1 <= tau2, got {self.tau1}, {self.tau2}")
        if self.tau1 >= TWO_PI:
            raise DomainError(f"tau1 must be below 2π, got {self.tau1}")
        if self.kind == "CCC" and self.tau2 - self.tau1 >= TWO_PI:
            raise DomainError(f"CCC middle arc must be shorter than 2π, got {self.tau2 - self.tau1}")

    @classmethod
    def csc(cls, s: TurnSign, sigma: TurnSign, tau1: float, tau2: float) -> "ControlSchedule":
        return cls("CSC", s, sigma, tau1, tau2)

    @classmethod
    def ccc(cls, s: TurnSign, tau1: float, tau2: float) -> "ControlSchedule":
        return cls("CCC", s, None, tau1, tau2)

    def rates(self) -> tuple[int, int, int]:
        """Control values on the three intervals"""
        if self.kind == "CSC":
            return (self.s, 0, self.sigma)
        return (self.s, -self.s, self.s)

    def pieces(self, t: float) -> list[tuple[float, int]]:
        """Split [0, t] into (duration, control) pieces with constant control"""
        bounds = [0.0, min(self.tau1, t), min(self.tau2, t), t]
        return [(b - a, u) for a, b, u in zip(bounds[:-1], bounds[1:], self.rates()) if b > a]

    def shifted(self, dtau2: float) -> "ControlSchedule":
        """Copy with the second switch moved by ``dtau2``"""
        return ControlSchedule(self.kind, self.s, self.sigma, self.tau1, self.tau2 + dtau2)

    def mirrored(self) -> "ControlSchedule":
        """The schedule with every turn direction reversed"""
        return ControlSchedule(
            self.kind, -self.s, None if self.sigma is None else -self.sigma, self.tau1, self.tau2
        )


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    config: Configuration
    u: int


def control_at(sched: ControlSchedule, t: float) -> int:
    """Right-continuous control value of ``sched`` at time ``t``"""
    u1, u2, u3 = sched.rates()
    if t < sched.tau1:
        return u1
    if t < sched.tau2:
        return u2
    return u3


def csc_endpoint_arrays(s: int, sigma: int, tau1: ArrayLike, tau2: ArrayLike, t: ArrayLike):
    """Unchecked, broadcasting form of :func:`csc_endpoint`

    Returns:
      tuple: (x, y, phi) arrays
    """
    tau1 = np.asarray(tau1, dtype=float)
    tau2 = np.asarray(tau2, dtype=float)
    t = np.asarray(t, dtype=float)
    c1 = np.cos(tau1)
    s1 = np.sin(tau1)
    straight = tau2 - tau1
    final = s * tau1 + sigma * (t - tau2)
    x = s * (c1 - 1.0 - straight * s1) + sigma * (np.cos(final) - c1)
    y = s1 + straight * c1 - sigma * (s * s1 - np.sin(final))
    return x, y, HALF_PI + final


def ccc_endpoint_arrays(s: int, tau1: ArrayLike, tau2: ArrayLike, t: ArrayLike):
    """Unchecked, broadcasting form of :func:`ccc_endpoint`"""
    tau1 = np.asarray(tau1, dtype=float)
    tau2 = np.asarray(tau2, dtype=float)
    t = np.asarray(t, dtype=float)
    a = 2.0 * tau1 - tau2
    b = 2.0 * tau1 - 2.0 * tau2 + t
    x = s * (2.0 * np.cos(tau1) - 1.0 - 2.0 * np.cos(a) + np.cos(b))
    y = 2.0 * np.sin(tau1) - 2.0 * np.sin(a) + np.sin(b)
    return x, y, HALF_PI + s * b


def advance_arrays(x: ArrayLike, y: ArrayLike, phi: ArrayLike, u: int, d: ArrayLike):
    """Exact state after holding control ``u`` for duration ``d``, broadcasting"""
    phi = np.asarray(phi, dtype=float)
    d = np.asarray(d, dtype=float)
    if u == 0:
        return x + d * np.cos(phi), y + d * np.sin(phi), phi + 0.0 * d
    end = phi + u * d
    return x + (np.sin(end) - np.sin(phi)) / u, y + (np.cos(phi) - np.cos(end)) / u, end


def _as_config(xyz) -> Configuration:
    return Configuration(float(xyz[0]), float(xyz[1]), float(xyz[2]))


def csc_endpoint(s: TurnSign, sigma: TurnSign, tau1: float, tau2: float, t: float) -> Configuration:
    """Closed-form configuration reached at time ``t`` by a CSC control

    Args:
      s: Direction of the first arc
      sigma: Direction of the last arc
      tau1: End of the first arc
      tau2: End of the straight segment
      t: Query time

    Returns:
      Configuration: The car configuration at ``t``

    Raises:
      DomainError: unless 0 <= tau1 <= tau2 <= t
    """
    check_turn_sign(s, "s")
    check_turn_sign(sigma, "sigma")
    if not 0.0 <= tau1 <= tau2 <= t:
        raise DomainError(f"csc_endpoint requires 0 <= tau1 <= tau2 <= t, got {tau1}, {tau2}, {t}")
    return _as_config(csc_endpoint_arrays(s, sigma, tau1, tau2, t))


def ccc_endpoint(s: TurnSign, tau1: float, tau2: float, t: float) -> Configuration:
    """Closed-form configuration reached at time ``t`` by a CCC control

    Raises:
      DomainError: unless 0 <= tau1 <= tau2 <= t and tau2 - tau1 < 2π
    """
    check_turn_sign(s, "s")
    if not 0.0 <= tau1 <= tau2 <= t:
        raise DomainError(f"ccc_endpoint requires 0 <= tau1 <= tau2 <= t, got {tau1}, {tau2}, {t}")
    if tau2 - tau1 >= TWO_PI:
        raise DomainError(f"ccc_endpoint requires a middle arc shorter than 2π, got {tau2 - tau1}")
    return _as_config(ccc_endpoint_arrays(s, tau1, tau2, t))


def endpoint(sched: ControlSchedule, t: float) -> Configuration:
    """Configuration at time ``t`` of the car driven by ``sched``

    Times before a switch are handled by clamping the switch times to ``t``,
    which yields the prefix of the same trajectory.
    """
    if t < 0.0:
        raise DomainError(f"Negative time {t}")
    tau1 = min(sched.tau1, t)
    tau2 = min(sched.tau2, t)
    if sched.kind == "CSC":
        return csc_endpoint(sched.s, sched.sigma, tau1, tau2, t)
    return ccc_endpoint(sched.s, tau1, tau2, t)


def _rk4_piece(state: tuple[float, float, float], u: int, duration: float, step: float) -> tuple[float, float, float]:
    n = max(1, math.ceil(duration / step))
    h = duration / n
    x, y, phi = state
    for _ in range(n):
        k1x, k1y = math.cos(phi), math.sin(phi)
        p2 = phi + 0.5 * h * u
        k2x, k2y = math.cos(p2), math.sin(p2)
        # heading is linear in time, so the two midpoint stages coincide
        k3x, k3y = k2x, k2y
        p4 = phi + h * u
        k4x, k4y = math.cos(p4), math.sin(p4)
        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        phi = p4
    return (x, y, phi)


def integrate_pieces(pieces: list[tuple[float, int]], step: float) -> Configuration:
    """Integrate the dynamics over consecutive constant-control pieces

    Args:
      pieces: (duration, control) pairs applied in order from the start
      step: Largest Runge-Kutta step; each piece is split into equal steps

    Returns:
      Configuration: State after the last piece
    """
    if not step > 0.0:
        raise DomainError(f"Integration step must be positive, got {step}")
    state = START.as_tuple()
    for duration, u in pieces:
        if duration > 0.0:
            state = _rk4_piece(state, u, duration, step)
    return Configuration(*state)


def integrate_ode(sched: ControlSchedule, t: float, step: float) -> Configuration:
    """Fourth-order Runge-Kutta integration of the car dynamics

    The integration interval is split exactly at tau1 and tau2 so the
    control is constant within every step.

    Args:
      sched: Control schedule to apply
      t: Final time
      step: Largest integration step

    Returns:
      Configuration: Integrated state at ``t``
    """
    if t < 0.0:
        raise DomainError(f"Negative time {t}")
    return integrate_pieces(sched.pieces(t), step)


def sample_trajectory(sched: ControlSchedule, t_end: float, n: int) -> list[TrajectorySample]:
    """Sample ``n`` uniformly spaced points of the trajectory on [0, t_end]"""
    if n < 2:
        raise DomainError(f"sample_trajectory needs at least 2 samples, got {n}")
    samples = []
    for t in np.linspace(0.0, t_end, n):
        t = float(t)
        samples.append(TrajectorySample(t, endpoint(sched, t), control_at(sched, t)))
    return samples
