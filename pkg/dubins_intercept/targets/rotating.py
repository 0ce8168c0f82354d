"""
A target resting at a point while its heading turns at a constant rate
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .target_base import TargetKind, TargetTrajectory, broadcast_time, spec_float


@dataclass(frozen=True)
class RotatingPointTarget(TargetTrajectory):
    kind = "rotating_point"
    x0: float
    y0: float
    alpha: float

    @property
    def lipschitz(self) -> float:
        return abs(self.alpha)

    def evaluate(self, t):
        t = broadcast_time(t)
        return np.full_like(t, self.x0), np.full_like(t, self.y0), self.alpha * t

    def params(self) -> dict[str, Any]:
        return {"kind": self.kind, "x": self.x0, "y": self.y0, "alpha": self.alpha}


def rotating_point(x0: float, y0: float, alpha: float) -> RotatingPointTarget:
    """E(t) = (x0, y0, alpha*t)"""
    return RotatingPointTarget(x0, y0, alpha)


def _from_spec(spec: dict[str, Any], path: Path) -> RotatingPointTarget:
    return rotating_point(spec_float(spec, "x", path), spec_float(spec, "y", path), spec_float(spec, "alpha", path))


RotatingPoint = TargetKind(
    name="rotating_point",
    description="Target resting at (x, y) with heading alpha*t",
    required=("x", "y", "alpha"),
    from_spec=_from_spec,
)
