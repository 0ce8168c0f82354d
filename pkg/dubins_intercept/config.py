"""Configuration module for dubins_intercept

This module contains the settings used by the solver and the oracle, and
the InterceptConfig class which combines defaults, scenario-file overrides
and command-line overrides into the settings for one run.
"""

import math
from dataclasses import dataclass, fields, replace
from typing import Any

from .errors import DomainError
from .logging import logger

default_horizon = 8.0 * math.pi


@dataclass(frozen=True)
class SolverSettings:
    """
    Settings of the minimal-root search. Times and tolerances are in the
    normalised units of the car (unit speed, unit turn radius).

    ``graze_slope`` widens the tangency catch: grid minima of |f| up to
    value_tol + graze_slope*scan_step are refined, and kept only if the
    refined |f| is within value_tol. ``families`` holds family labels; an
    empty tuple means all ten.
    """

    horizon: float = default_horizon
    scan_step: float = 1e-3
    root_tol: float = 1e-9
    value_tol: float = 1e-6
    interception_tol: float = 1e-6
    jump_guard: float = math.pi
    graze_slope: float = 10.0
    families: tuple[str, ...] = ()

    def __post_init__(self):
        for f in fields(self):
            if f.name == "families":
                continue
            value = getattr(self, f.name)
            if not value > 0.0:
                raise DomainError(f"Solver setting {f.name} must be positive, got {value}")


@dataclass(frozen=True)
class OracleSettings:
    """
    Grid and tolerances of the brute-force oracle. ``exhaustive`` switches
    to enumerating three-piece controls with free signs instead of the
    CSC/CCC families. ``ode_step`` is the Runge-Kutta step of the spot
    check on the verified schedule.
    """

    tau_step: float = 0.02
    t_step: float = 0.02
    position_tol: float = 0.05
    heading_tol: float = 0.05
    horizon: float = default_horizon
    exhaustive: bool = False
    ode_step: float = 1e-4

    def __post_init__(self):
        for name in ("tau_step", "t_step", "position_tol", "heading_tol", "horizon", "ode_step"):
            value = getattr(self, name)
            if not value > 0.0:
                raise DomainError(f"Oracle setting {name} must be positive, got {value}")

    @property
    def agreement_window(self) -> float:
        """Allowed gap between the solver time and the oracle time"""
        # the oracle stops once inside the tolerance ball, which at unit
        # speed can be up to max(tol) before T*, on top of the grid error
        return 2.0 * self.t_step + max(self.position_tol, self.heading_tol)


def _merge(name: str, default: Any, scenario: dict[str, Any], cli: dict[str, Any]) -> Any:
    if cli.get(name) is not None:
        logger.debug("User-provided %s %s", name, cli[name])
        return cli[name]
    if scenario.get(name) is not None:
        logger.debug("Scenario-provided %s %s", name, scenario[name])
        return scenario[name]
    logger.debug("Default %s %s", name, default)
    return default


class InterceptConfig:
    """Run configuration class

    This class is responsible for combining the settings found in a
    scenario file with the flags given on the command line and the
    built-in defaults. Command-line values win over scenario values, which
    win over defaults. Every attribute is set by the `__init__` method.
    """

    def __init__(
        self,
        scenario_solver: dict[str, Any] | None = None,
        scenario_oracle: dict[str, Any] | None = None,
        scenario_horizon: float | None = None,
        horizon: float | None = None,
        scan_step: float | None = None,
        tol: float | None = None,
        oracle_step: float | None = None,
        families: tuple[str, ...] | None = None,
        exhaustive: bool = False,
    ):
        """Initialises the config object

        Args:
          scenario_solver:
            The ``solver`` mapping of the scenario file, keyed by
            ``SolverSettings`` field names
          scenario_oracle:
            The ``oracle`` mapping of the scenario file, keyed by
            ``OracleSettings`` field names
          scenario_horizon:
            The scenario's top-level ``horizon``
          horizon:
            Search horizon from the command line, shared by solver and oracle
          scan_step:
            Solver grid step from the command line
          tol:
            Interception tolerance from the command line
          oracle_step:
            Oracle grid step from the command line, used for both tau_step
            and t_step
          families:
            Family labels restricting the search
          exhaustive:
            Run the oracle in arbitrary-switching mode

        Raises:
          DomainError: A merged setting is out of range
        """
        scen_solver = dict(scenario_solver or {})
        scen_oracle = dict(scenario_oracle or {})
        if scenario_horizon is not None:
            scen_solver.setdefault("horizon", scenario_horizon)
            scen_oracle.setdefault("horizon", scenario_horizon)

        defaults = SolverSettings()
        cli_solver = {"horizon": horizon, "scan_step": scan_step, "interception_tol": tol}
        merged = {f.name: _merge(f.name, getattr(defaults, f.name), scen_solver, cli_solver) for f in fields(defaults)}
        if families:
            merged["families"] = tuple(families)
            logger.debug("User-provided families %s", merged["families"])
        merged["families"] = tuple(merged["families"])
        self.solver = SolverSettings(**merged)

        odefaults = OracleSettings()
        cli_oracle = {"horizon": horizon, "tau_step": oracle_step, "t_step": oracle_step}
        omerged = {f.name: _merge(f.name, getattr(odefaults, f.name), scen_oracle, cli_oracle) for f in fields(odefaults)}
        if exhaustive:
            omerged["exhaustive"] = True
            logger.debug("User-provided exhaustive oracle mode")
        self.oracle = OracleSettings(**omerged)

    def with_horizon(self, horizon: float) -> "InterceptConfig":
        """Copy with both horizons replaced"""
        other = object.__new__(InterceptConfig)
        other.solver = replace(self.solver, horizon=horizon)
        other.oracle = replace(self.oracle, horizon=horizon)
        return other
