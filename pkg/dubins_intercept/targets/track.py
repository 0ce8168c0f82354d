"""
A target given by time-stamped samples, e.g. from a track file
"""

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .target_base import TargetKind, TargetTrajectory, broadcast_time, read_utf8
from ..errors import DomainError, ScenarioError
from ..geometry import Configuration

TRACK_HEADER = ["t", "x", "y", "phi"]


@dataclass(frozen=True, eq=False)
class SampledTarget(TargetTrajectory):
    """
    Piecewise-linear interpolation of samples in x and y, shortest-arc
    interpolation in heading, constant extrapolation outside the sampled
    times. Headings are unwrapped on construction so that interpolating
    the unwrapped sequence follows the shorter arc between samples.
    """

    kind = "track"
    times: np.ndarray
    xs: np.ndarray
    ys: np.ndarray
    phis: np.ndarray
    source: str = ""

    @property
    def lipschitz(self) -> float:
        dt = np.diff(self.times)
        step = np.sqrt(np.diff(self.xs) ** 2 + np.diff(self.ys) ** 2 + np.diff(self.phis) ** 2)
        return float(np.max(step / dt))

    def evaluate(self, t):
        t = broadcast_time(t)
        return (
            np.interp(t, self.times, self.xs),
            np.interp(t, self.times, self.ys),
            np.interp(t, self.times, self.phis),
        )

    def params(self) -> dict[str, Any]:
        if self.source:
            return {"kind": self.kind, "path": self.source}
        return {
            "kind": self.kind,
            "samples": [[float(t), float(x), float(y), float(p)] for t, x, y, p in zip(self.times, self.xs, self.ys, self.phis)],
        }


def sampled_target(samples: list[tuple[float, Configuration]], source: str = "") -> SampledTarget:
    """Interpolated target through ``samples``

    Args:
      samples: (t, configuration) pairs with strictly increasing t
      source: Optional file the samples were read from

    Returns:
      SampledTarget: The interpolating target

    Raises:
      DomainError: fewer than two samples or times not strictly increasing
    """
    if len(samples) < 2:
        raise DomainError(f"A sampled target needs at least 2 samples, got {len(samples)}")
    times = np.array([s[0] for s in samples], dtype=float)
    if np.any(np.diff(times) <= 0.0):
        bad = int(np.argmax(np.diff(times) <= 0.0)) + 1
        raise DomainError(f"Sample times must be strictly increasing (sample {bad} at t={times[bad]})")
    xs = np.array([s[1].x for s in samples], dtype=float)
    ys = np.array([s[1].y for s in samples], dtype=float)
    phis = np.unwrap(np.array([s[1].phi for s in samples], dtype=float))
    return SampledTarget(times, xs, ys, phis, source)


def read_track(path: Path) -> list[tuple[float, Configuration]]:
    """Read a ``t,x,y,phi`` CSV track file

    Raises:
      OSError: The file cannot be read
      ScenarioError: Invalid UTF-8, missing or wrong header, unparsable
        rows, or times that do not strictly increase
    """
    samples = []
    with io.StringIO(read_utf8(path), newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != TRACK_HEADER:
            raise ScenarioError(str(path), 1, f"track header must be {','.join(TRACK_HEADER)}, got {header}")
        for row in reader:
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 4:
                raise ScenarioError(str(path), reader.line_num, f"expected 4 columns, got {len(row)}")
            try:
                t, x, y, phi = (float(c) for c in row)
            except ValueError:
                raise ScenarioError(str(path), reader.line_num, f"non-numeric value in row {row}")
            if not all(math.isfinite(v) for v in (t, x, y, phi)):
                raise ScenarioError(str(path), reader.line_num, f"non-finite value in row {row}")
            if samples and t <= samples[-1][0]:
                raise ScenarioError(str(path), reader.line_num, f"time {t} does not increase")
            samples.append((t, Configuration(x, y, phi)))
    if len(samples) < 2:
        raise ScenarioError(str(path), 1, "track needs at least 2 samples")
    return samples


def _from_spec(spec: dict[str, Any], path: Path) -> SampledTarget:
    line = spec.get("__line__", 1)
    if "path" in spec:
        track_path = Path(spec["path"])
        if not track_path.is_absolute():
            track_path = path.parent / track_path
        try:
            return sampled_target(read_track(track_path), str(spec["path"]))
        except OSError as e:
            raise ScenarioError(str(path), line, f"cannot read track file {track_path}: {e.strerror}")
    if "samples" in spec:
        try:
            samples = [(float(t), Configuration(float(x), float(y), float(p))) for t, x, y, p in spec["samples"]]
            if not all(math.isfinite(v) for t, c in samples for v in (t, *c.as_tuple())):
                raise ValueError("samples must be finite")
            return sampled_target(samples)
        except (TypeError, ValueError) as e:
            raise ScenarioError(str(path), line, f"bad track samples: {e}")
    raise ScenarioError(str(path), line, "track target requires 'path' or 'samples'")


Track = TargetKind(
    name="track",
    description="Target interpolated from a t,x,y,phi CSV file ('path') or inline 'samples'",
    required=(),
    from_spec=_from_spec,
)
