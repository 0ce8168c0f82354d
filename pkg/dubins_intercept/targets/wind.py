"""
Reduction of goal-reaching under a known time-dependent wind to the
interception of a moving target.

A car flying in air that drifts with the wind w(t) reaches the fixed ground
goal G at time T exactly when, in the air frame, it meets the point

    E(T) = G - integral_0^T w(tau) dtau

with the goal's heading. The integral is accumulated by adaptive quadrature
between cached checkpoints. The partial intervals past the checkpoints of a
whole time grid are integrated together by one vector-valued adaptive
quadrature, so evaluating E on a dense grid stays cheap.
"""

import math
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np
from scipy import integrate

from .target_base import TargetKind, TargetTrajectory, broadcast_time, spec_config, spec_float
from ..errors import DomainError, ScenarioError
from ..geometry import Configuration
from ..logging import logger

CHECKPOINT_STEP = 0.5
QUAD_TOL = 1e-10


@dataclass(frozen=True)
class WindField:
    """
    A wind velocity field w(t) = (wx, wy) together with the ground goal.
    ``velocity`` must accept numpy arrays of times and return a pair of
    arrays of the same shape. ``speed_bound`` bounds |w(t)|.
    """

    goal: Configuration
    velocity: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]
    speed_bound: float
    description: dict[str, Any] = field(default_factory=dict)


def constant_wind(goal: Configuration, wx: float, wy: float) -> WindField:
    def velocity(t):
        t = np.asarray(t, dtype=float)
        return np.full_like(t, wx), np.full_like(t, wy)

    return WindField(goal, velocity, math.hypot(wx, wy), {"kind": "constant", "wx": wx, "wy": wy})


def sinusoidal_wind(
    goal: Configuration,
    mean: tuple[float, float],
    amplitude: tuple[float, float],
    omega: float,
    phase: float = 0.0,
) -> WindField:
    """w(t) = mean + amplitude*sin(omega*t + phase), per axis"""

    def velocity(t):
        t = np.asarray(t, dtype=float)
        wave = np.sin(omega * t + phase)
        return mean[0] + amplitude[0] * wave, mean[1] + amplitude[1] * wave

    bound = math.hypot(abs(mean[0]) + abs(amplitude[0]), abs(mean[1]) + abs(amplitude[1]))
    desc = {
        "kind": "sinusoidal",
        "mean": list(mean),
        "amplitude": list(amplitude),
        "omega": omega,
        "phase": phase,
    }
    return WindField(goal, velocity, bound, desc)


@dataclass(frozen=True)
class WindGoalTarget(TargetTrajectory):
    kind = "wind"
    wind: WindField
    _checkpoints: list = field(default_factory=lambda: [(0.0, 0.0)], init=False, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False, compare=False)

    @property
    def lipschitz(self) -> float:
        return self.wind.speed_bound

    def _component(self, axis: int) -> Callable[[float], float]:
        return lambda tau: float(self.wind.velocity(np.asarray(tau))[axis])

    def _drift_at_checkpoint(self, k: int) -> tuple[float, float]:
        with self._lock:
            while len(self._checkpoints) <= k:
                j = len(self._checkpoints) - 1
                a, b = j * CHECKPOINT_STEP, (j + 1) * CHECKPOINT_STEP
                dx, _ = integrate.quad(self._component(0), a, b, epsabs=QUAD_TOL, epsrel=QUAD_TOL)
                dy, _ = integrate.quad(self._component(1), a, b, epsabs=QUAD_TOL, epsrel=QUAD_TOL)
                px, py = self._checkpoints[j]
                self._checkpoints.append((px + dx, py + dy))
            return self._checkpoints[k]

    def drift(self, t) -> tuple[np.ndarray, np.ndarray]:
        """Integral of the wind from 0 to t, component-wise"""
        t = broadcast_time(t)
        if np.any(t < 0.0):
            raise DomainError("Wind drift is only defined for t >= 0")
        flat = t.ravel()
        n = flat.size
        if n == 0:
            return np.zeros_like(t), np.zeros_like(t)
        k = np.floor(flat / CHECKPOINT_STEP).astype(int)
        self._drift_at_checkpoint(int(k.max()))
        base = np.array(self._checkpoints[: int(k.max()) + 1])
        start = k * CHECKPOINT_STEP
        span = flat - start

        # all partial intervals at once, mapped onto u in [0, 1]
        def integrand(u: float) -> np.ndarray:
            wx, wy = self.wind.velocity(start + u * span)
            return np.concatenate((np.broadcast_to(wx, (n,)) * span, np.broadcast_to(wy, (n,)) * span))

        rest, _ = integrate.quad_vec(integrand, 0.0, 1.0, epsabs=QUAD_TOL, epsrel=QUAD_TOL, norm="max")
        px = base[k, 0] + rest[:n]
        py = base[k, 1] + rest[n:]
        return px.reshape(t.shape), py.reshape(t.shape)

    def evaluate(self, t):
        t = broadcast_time(t)
        px, py = self.drift(t)
        goal = self.wind.goal
        return goal.x - px, goal.y - py, np.full_like(t, goal.phi)

    def params(self) -> dict[str, Any]:
        goal = self.wind.goal
        return {"kind": self.kind, "goal": {"x": goal.x, "y": goal.y, "phi": goal.phi}, "wind": self.wind.description}


def wind_goal_target(w: WindField) -> WindGoalTarget:
    """Air-frame target whose interception reaches ``w.goal`` under the wind"""
    logger.debug("Wind target towards %s with |w| <= %s", w.goal, w.speed_bound)
    return WindGoalTarget(w)


def _pair(spec: dict[str, Any], key: str, path: Path, line: int) -> tuple[float, float]:
    value = spec.get(key, [0.0, 0.0])
    numbers = isinstance(value, list) and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    if not (numbers and len(value) == 2 and all(math.isfinite(v) for v in value)):
        raise ScenarioError(str(path), line, f"wind field '{key}' must be a list of two finite numbers")
    return float(value[0]), float(value[1])


def _from_spec(spec: dict[str, Any], path: Path) -> WindGoalTarget:
    line = spec.get("__line__", 1)
    if not isinstance(spec.get("goal"), dict):
        raise ScenarioError(str(path), line, "wind target requires a 'goal' mapping with x, y, phi")
    if not isinstance(spec.get("wind"), dict):
        raise ScenarioError(str(path), line, "wind target requires a 'wind' mapping")
    goal = spec_config({**spec["goal"], "__line__": line}, path)
    wspec = {**spec["wind"], "__line__": line}
    kind = wspec.get("kind", "constant")
    if kind == "constant":
        return wind_goal_target(constant_wind(goal, spec_float(wspec, "wx", path), spec_float(wspec, "wy", path)))
    if kind == "sinusoidal":
        return wind_goal_target(
            sinusoidal_wind(
                goal,
                _pair(wspec, "mean", path, line),
                _pair(wspec, "amplitude", path, line),
                spec_float(wspec, "omega", path),
                spec_float(wspec, "phase", path, 0.0),
            )
        )
    raise ScenarioError(str(path), line, f"unknown wind kind '{kind}', expected 'constant' or 'sinusoidal'")


Wind = TargetKind(
    name="wind",
    description="Goal (x, y, phi) reached under a constant or sinusoidal wind",
    required=("goal", "wind"),
    from_spec=_from_spec,
)
