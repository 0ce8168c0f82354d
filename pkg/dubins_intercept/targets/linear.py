"""
A target in uniform straight-line motion. The heading is independent of
the direction of travel.
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .target_base import TargetKind, TargetTrajectory, broadcast_time, spec_config, spec_float
from ..geometry import Configuration


@dataclass(frozen=True)
class LinearTarget(TargetTrajectory):
    kind = "linear"
    start: Configuration
    vx: float
    vy: float

    @property
    def lipschitz(self) -> float:
        return math.hypot(self.vx, self.vy)

    def evaluate(self, t):
        t = broadcast_time(t)
        return self.start.x + self.vx * t, self.start.y + self.vy * t, np.full_like(t, self.start.phi)

    def params(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "x": self.start.x,
            "y": self.start.y,
            "phi": self.start.phi,
            "vx": self.vx,
            "vy": self.vy,
        }


def linear_uniform(p0: Configuration, vx: float, vy: float) -> LinearTarget:
    """E(t) = (x0 + vx*t, y0 + vy*t, phi0)"""
    return LinearTarget(p0, vx, vy)


def _from_spec(spec: dict[str, Any], path: Path) -> LinearTarget:
    return linear_uniform(spec_config(spec, path), spec_float(spec, "vx", path), spec_float(spec, "vy", path))


Linear = TargetKind(
    name="linear",
    description="Target starting at (x, y, phi) moving with velocity (vx, vy)",
    required=("x", "y", "phi", "vx", "vy"),
    from_spec=_from_spec,
)
