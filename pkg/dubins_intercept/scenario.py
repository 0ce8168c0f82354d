"""Scenario files

A scenario is a JSON document

    {
      "description": "target resting ahead of the car",
      "horizon": 25.0,
      "target": {"kind": "static", "x": 0.0, "y": 4.0, "phi": 1.5707963267948966},
      "solver": {"scan_step": 0.001},
      "oracle": {"t_step": 0.02}
    }

Angles are in radians and lengths in units of the minimum turn radius; the
car starts at (0, 0) heading along +y. ``target.mirror`` reflects the
target across x = 0. Every error is reported as ``<path>:<line>: <reason>``.
"""

import json
import math
import re
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

from .config import OracleSettings, SolverSettings
from .errors import ScenarioError
from .logging import logger
from .targets import TargetTrajectory, get_target_kind, mirror
from .targets.target_base import read_utf8

_TOP_KEYS = {"description", "horizon", "target", "solver", "oracle"}


@dataclass(frozen=True)
class Scenario:
    target: TargetTrajectory
    horizon: float | None = None
    solver: dict[str, Any] = field(default_factory=dict)
    oracle: dict[str, Any] = field(default_factory=dict)
    description: str = ""
    path: Path | None = None


def _line_of(text: str, key: str) -> int:
    m = re.search(rf'"{re.escape(key)}"\s*:', text)
    if m is None:
        return 1
    return text.count("\n", 0, m.start()) + 1


def _overrides(raw: Any, allowed: tuple, section: str, path: Path, line: int) -> dict[str, Any]:
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ScenarioError(str(path), line, f"'{section}' must be a mapping")
    names = {f.name for f in fields(allowed)}
    unknown = sorted(set(raw) - names)
    if unknown:
        raise ScenarioError(str(path), line, f"unknown {section} setting(s) {', '.join(unknown)}")
    for key, value in raw.items():
        if key == "families":
            if not (isinstance(value, list) and all(isinstance(v, str) for v in value)):
                raise ScenarioError(str(path), line, "'families' must be a list of family labels")
        elif key == "exhaustive":
            if not isinstance(value, bool):
                raise ScenarioError(str(path), line, "'exhaustive' must be true or false")
        elif isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ScenarioError(str(path), line, f"{section} setting '{key}' must be a finite number")
    return dict(raw)


def parse_scenario(text: str, path: Path) -> Scenario:
    """Build a scenario from JSON text

    Args:
      text: JSON document
      path: File the text came from, used in messages and to resolve track files

    Returns:
      Scenario: The validated scenario

    Raises:
      ScenarioError: The document is not valid JSON or not a valid scenario
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(str(path), e.lineno, e.msg)
    if not isinstance(doc, dict):
        raise ScenarioError(str(path), 1, "scenario must be a JSON object")
    for key in sorted(set(doc) - _TOP_KEYS):
        logger.warning("%s:%d: ignoring unknown key '%s'", path, _line_of(text, key), key)

    tline = _line_of(text, "target")
    tspec = doc.get("target")
    if not isinstance(tspec, dict):
        raise ScenarioError(str(path), tline, "scenario requires a 'target' mapping")
    if "kind" not in tspec:
        raise ScenarioError(str(path), tline, "target requires a 'kind'")
    kind = get_target_kind(str(tspec["kind"]), str(path), tline)
    missing = [k for k in kind.required if k not in tspec]
    if missing:
        raise ScenarioError(str(path), tline, f"{kind.name} target requires {', '.join(missing)}")
    target = kind.from_spec({**tspec, "__line__": tline}, path)
    flip = tspec.get("mirror", False)
    if not isinstance(flip, bool):
        raise ScenarioError(str(path), tline, "'mirror' must be true or false")
    if flip:
        target = mirror(target)

    horizon = doc.get("horizon")
    if horizon is not None:
        hline = _line_of(text, "horizon")
        if isinstance(horizon, bool) or not isinstance(horizon, (int, float)) or not math.isfinite(horizon):
            raise ScenarioError(str(path), hline, "'horizon' must be a number")
        if horizon <= 0:
            raise ScenarioError(str(path), hline, f"'horizon' must be positive, got {horizon}")
        horizon = float(horizon)

    description = doc.get("description", "")
    if not isinstance(description, str):
        raise ScenarioError(str(path), _line_of(text, "description"), "'description' must be a string")

    solver = _overrides(doc.get("solver"), SolverSettings, "solver", path, _line_of(text, "solver"))
    oracle = _overrides(doc.get("oracle"), OracleSettings, "oracle", path, _line_of(text, "oracle"))
    logger.debug("Loaded scenario %s with target %s", path, target.params())
    return Scenario(target, horizon, solver, oracle, description, path)


def load_scenario(path: str | Path) -> Scenario:
    """Read and validate a scenario file

    Raises:
      ScenarioError: The file is unreadable or invalid
    """
    path = Path(path)
    try:
        text = read_utf8(path)
    except OSError as e:
        raise ScenarioError(str(path), 1, f"cannot read scenario: {e.strerror}")
    return parse_scenario(text, path)


def scenario_dict(target: TargetTrajectory, horizon: float | None = None, description: str = "") -> dict[str, Any]:
    """Scenario document describing ``target``"""
    doc: dict[str, Any] = {"description": description, "target": target.params()}
    if horizon is not None:
        doc["horizon"] = horizon
    return doc
