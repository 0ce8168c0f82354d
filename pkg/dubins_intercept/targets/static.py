"""
A target resting at a fixed configuration
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .target_base import TargetKind, TargetTrajectory, broadcast_time, spec_config
from ..geometry import Configuration


@dataclass(frozen=True)
class StaticTarget(TargetTrajectory):
    kind = "static"
    config: Configuration

    @property
    def lipschitz(self) -> float:
        return 0.0

    def evaluate(self, t):
        t = broadcast_time(t)
        return (
            np.full_like(t, self.config.x),
            np.full_like(t, self.config.y),
            np.full_like(t, self.config.phi),
        )

    def params(self) -> dict[str, Any]:
        return {"kind": self.kind, "x": self.config.x, "y": self.config.y, "phi": self.config.phi}


def static_target(p: Configuration) -> StaticTarget:
    """E(t) = p for all t"""
    return StaticTarget(p)


def _from_spec(spec: dict[str, Any], path: Path) -> StaticTarget:
    return static_target(spec_config(spec, path))


Static = TargetKind(
    name="static",
    description="Target resting at (x, y, phi)",
    required=("x", "y", "phi"),
    from_spec=_from_spec,
)
