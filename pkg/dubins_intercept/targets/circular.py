"""
A target moving around a circle at constant angular rate
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .target_base import TargetKind, TargetTrajectory, broadcast_time, spec_float
from ..errors import DomainError, ScenarioError


@dataclass(frozen=True)
class CircularTarget(TargetTrajectory):
    """
    Position on the circle of radius ``r`` about (cx, cy) at polar angle
    phase + omega*t. The heading is that polar angle plus
    ``heading_offset``; an offset of π/2 with positive omega is tangential.
    """

    kind = "circular"
    cx: float
    cy: float
    r: float
    omega: float
    phase: float
    heading_offset: float

    def __post_init__(self):
        if not self.r > 0.0:
            raise DomainError(f"Circular target radius must be positive, got {self.r}")

    @property
    def lipschitz(self) -> float:
        return abs(self.omega) * math.hypot(self.r, 1.0)

    def evaluate(self, t):
        t = broadcast_time(t)
        angle = self.phase + self.omega * t
        return self.cx + self.r * np.cos(angle), self.cy + self.r * np.sin(angle), angle + self.heading_offset

    def params(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "cx": self.cx,
            "cy": self.cy,
            "r": self.r,
            "omega": self.omega,
            "phase": self.phase,
            "heading_offset": self.heading_offset,
        }


def circular_target(cx: float, cy: float, r: float, omega: float, phase: float, heading_offset: float) -> CircularTarget:
    """Target on a circle; see :class:`CircularTarget`

    Raises:
      DomainError: r <= 0
    """
    return CircularTarget(cx, cy, r, omega, phase, heading_offset)


def _from_spec(spec: dict[str, Any], path: Path) -> CircularTarget:
    try:
        return circular_target(
            spec_float(spec, "cx", path),
            spec_float(spec, "cy", path),
            spec_float(spec, "r", path),
            spec_float(spec, "omega", path),
            spec_float(spec, "phase", path, 0.0),
            spec_float(spec, "heading_offset", path, math.pi / 2),
        )
    except DomainError as e:
        raise ScenarioError(str(path), spec.get("__line__", 1), str(e))


Circular = TargetKind(
    name="circular",
    description="Target on the circle of radius r about (cx, cy), angle phase + omega*t",
    required=("cx", "cy", "r", "omega"),
    from_spec=_from_spec,
)
