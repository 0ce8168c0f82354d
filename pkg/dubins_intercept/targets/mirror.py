"""
Reflection of a target across the line x = 0. The heading maps to
π - phi, so the reflected target is intercepted by the mirrored control.
"""

import math
from dataclasses import dataclass
from typing import Any

from .target_base import TargetTrajectory


@dataclass(frozen=True)
class MirroredTarget(TargetTrajectory):
    kind = "mirror"
    inner: TargetTrajectory

    @property
    def lipschitz(self) -> float:
        return self.inner.lipschitz

    def evaluate(self, t):
        x, y, phi = self.inner.evaluate(t)
        return -x, y, math.pi - phi

    def params(self) -> dict[str, Any]:
        return {**self.inner.params(), "mirror": True}


def mirror(e: TargetTrajectory) -> TargetTrajectory:
    """E*(t) = (-x_E(t), y_E(t), π - phi_E(t))

    Mirroring twice returns the original target object.
    """
    if isinstance(e, MirroredTarget):
        return e.inner
    return MirroredTarget(e)
