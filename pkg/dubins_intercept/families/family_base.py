from dataclasses import dataclass
from typing import ClassVar

import numpy as np
import numpy.typing as npt

from ..motion import ControlSchedule
from ..targets import TargetTrajectory

# Squared radii below this are treated as the degenerate point (division by
# rho^2 in the chains)
RHO2_EPS = 1e-14
# Slack on the square-root / arccos domains of the chains
DOMAIN_SLACK = 1e-10


def sign_label(v: int) -> str:
    return "+1" if v > 0 else "-1"


@dataclass(frozen=True)
class ResidualFamily:
    """
    A class encapsulating one of the ten residual equations whose minimal
    root is a candidate interception time. Family objects are static values
    initialised in the file implementing the family and collected, in
    tie-break order, by ``families/__init__.py``.

    ``residual_arrays`` is the vectorised residual: it takes times and the
    target configuration at those times and returns NaN wherever the
    residual is undefined. ``t_min`` is the left end of the family's search
    domain.
    """

    kind: ClassVar[str] = "abstract"
    t_min: ClassVar[float] = 0.0

    @property
    def label(self) -> str:
        raise NotImplementedError

    @property
    def path_name(self) -> str:
        raise NotImplementedError

    @property
    def signs(self) -> tuple[int, ...]:
        return ()

    def residual_arrays(
        self, T: npt.ArrayLike, x: npt.ArrayLike, y: npt.ArrayLike, phi: npt.ArrayLike
    ) -> npt.NDArray[np.float64]:
        raise NotImplementedError

    def residual_on(self, T: npt.ArrayLike, e: TargetTrajectory) -> npt.NDArray[np.float64]:
        """Residual of this family for target ``e`` at times ``T``"""
        T = np.asarray(T, dtype=float)
        x, y, phi = e.evaluate(T)
        return np.asarray(self.residual_arrays(T, x, y, phi), dtype=float)

    def residual(self, T: float, e: TargetTrajectory) -> float | None:
        """Scalar residual, or None where undefined"""
        v = float(self.residual_on(T, e))
        return None if np.isnan(v) else v

    def recover(self, T: float, e: TargetTrajectory) -> ControlSchedule:
        raise NotImplementedError

    def mirrored(self) -> "ResidualFamily":
        """The family intercepting the mirror image of this family's targets"""
        raise NotImplementedError

    def __str__(self) -> str:
        return self.label
