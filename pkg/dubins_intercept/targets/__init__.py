"""
Defines the target trajectories and the `get_target_kind` function used
to build them from scenario files
"""

from .target_base import TargetKind, TargetTrajectory, continuity_violations
from .static import Static, StaticTarget, static_target
from .rotating import RotatingPoint, RotatingPointTarget, rotating_point
from .linear import Linear, LinearTarget, linear_uniform
from .circular import Circular, CircularTarget, circular_target
from .wind import Wind, WindField, WindGoalTarget, constant_wind, sinusoidal_wind, wind_goal_target
from .track import Track, SampledTarget, read_track, sampled_target
from .mirror import MirroredTarget, mirror
from ..errors import UnknownTargetKindError

__all__ = [
    "get_target_kind",
    "target_kinds",
    "TargetKind",
    "TargetTrajectory",
    "continuity_violations",
    "StaticTarget",
    "static_target",
    "RotatingPointTarget",
    "rotating_point",
    "LinearTarget",
    "linear_uniform",
    "CircularTarget",
    "circular_target",
    "WindField",
    "WindGoalTarget",
    "constant_wind",
    "sinusoidal_wind",
    "wind_goal_target",
    "SampledTarget",
    "read_track",
    "sampled_target",
    "MirroredTarget",
    "mirror",
]


def target_kinds() -> list[TargetKind]:
    """All ``TargetKind`` objects known to this module"""
    return [obj for obj in globals().values() if isinstance(obj, TargetKind)]


def get_target_kind(name: str, path: str = "<scenario>", line: int = 1) -> TargetKind:
    """Look up the target kind named in a scenario file.

    Scans the ``TargetKind`` objects known to this module for one whose
    ``name`` matches.

    Args:
      name: The ``target.kind`` value
      path: Scenario file, for the error message
      line: Line of the target mapping, for the error message

    Returns:
      TargetKind: Matching kind

    Raises:
      UnknownTargetKindError: No kind has this name
    """
    for kind in target_kinds():
        if kind.name == name:
            return kind
    raise UnknownTargetKindError(
        path, line, f"unknown target kind '{name}', expected one of {', '.join(k.name for k in target_kinds())}"
    )
