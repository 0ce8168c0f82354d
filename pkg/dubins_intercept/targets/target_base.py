import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, ClassVar

import numpy as np
import numpy.typing as npt

from ..errors import ScenarioError
from ..geometry import Configuration, config_distance

ConfigArrays = tuple[npt.NDArray[np.float64], npt.NDArray[np.float64], npt.NDArray[np.float64]]


@dataclass(frozen=True)
class TargetTrajectory:
    """
    Base class for prescribed target motions E(t). Subclasses implement
    ``evaluate``, which maps a scalar or array of times to x, y and heading
    arrays of the same shape. ``lipschitz`` bounds the speed of E in the
    configuration metric and is used by the sampled continuity check.
    Instances are immutable and evaluation is safe to call concurrently.
    """

    kind: ClassVar[str] = "abstract"

    @property
    def lipschitz(self) -> float:
        raise NotImplementedError

    def evaluate(self, t: npt.ArrayLike) -> ConfigArrays:
        raise NotImplementedError

    def params(self) -> dict[str, Any]:
        """Scenario-style description of this target"""
        raise NotImplementedError

    def __call__(self, t: float) -> Configuration:
        x, y, phi = self.evaluate(float(t))
        return Configuration(float(x), float(y), float(phi))


@dataclass
class TargetKind:
    """
    A class describing one ``target.kind`` value accepted in scenario files.
    All fields are required and are intended to be provided by a static
    object initialised in the file that implements the target, so that
    ``get_target_kind()`` can discover it.
    """

    name: str
    description: str
    required: tuple[str, ...]
    # Builds the target from its scenario mapping; the path is the scenario
    # file, used to resolve relative track files
    from_spec: Callable[[dict[str, Any], Path], TargetTrajectory]


def broadcast_time(t: npt.ArrayLike) -> npt.NDArray[np.float64]:
    return np.asarray(t, dtype=float)


def continuity_violations(
    target: TargetTrajectory, t_hi: float = 8.0 * np.pi, n: int = 2000, h: float = 1e-6
) -> list[float]:
    """Sampled continuity check

    Compares E(t) and E(t + h) at ``n`` points of [0, t_hi] against the
    target's declared Lipschitz constant.

    Returns:
      list[float]: Sample times where the bound is violated (empty if none)
    """
    t = np.linspace(0.0, t_hi, n)
    x0, y0, p0 = target.evaluate(t)
    x1, y1, p1 = target.evaluate(t + h)
    d = np.asarray(config_distance(x1, y1, p1, x0, y0, p0))
    bound = target.lipschitz * h * (1.0 + 1e-6) + 1e-12
    return [float(ti) for ti in t[d > bound]]


def spec_float(spec: dict[str, Any], key: str, path: Path, default: float | None = None) -> float:
    """Read a numeric field from a target mapping

    Raises:
      ScenarioError: The field is missing (and has no default) or not a finite
        number
    """
    if key not in spec:
        if default is not None:
            return default
        raise ScenarioError(str(path), spec.get("__line__", 1), f"target field '{key}' is required")
    value = spec[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(str(path), spec.get("__line__", 1), f"target field '{key}' must be a number, got {value!r}")
    if not math.isfinite(value):
        raise ScenarioError(str(path), spec.get("__line__", 1), f"target field '{key}' must be finite, got {value!r}")
    return float(value)


def spec_config(spec: dict[str, Any], path: Path) -> Configuration:
    return Configuration(spec_float(spec, "x", path), spec_float(spec, "y", path), spec_float(spec, "phi", path))


def read_utf8(path: Path) -> str:
    """Text of an input file

    Raises:
      OSError: The file cannot be read
      ScenarioError: The bytes are not valid UTF-8, anchored to the line of
        the first bad byte
    """
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        raise ScenarioError(str(path), line, f"not valid UTF-8 (byte {data[e.start]:#04x} at offset {e.start})")
