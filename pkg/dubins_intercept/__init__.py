"""Main program for dubins_intercept

Minimum-time lateral interception of a moving target by a Dubins car: a
unit-speed car with turn rate bounded by 1, starting at (0, 0) heading
along +y, must reach the target's position and heading at the same time.
Provides the command-line entry point as the function main(), a python
entrypoint solve() which is a synchronous wrapper to the async entrypoint
solve_async(), and the brute-force oracle used to check results.

Typical usage example:

  Command line:
    $ dubins_intercept solve scenario.json
    $ dubins_intercept residuals scenario.json --grid 0.01 > residuals.csv
    $ dubins_intercept svg scenario.json figure.svg --markers 8

  Synchronous:
    result = dubins_intercept.solve(dubins_intercept.rotating_point(3.0, 3.0, 0.0))

  Asynchronous:
    results = await asyncio.gather(*(dubins_intercept.solve_async(e) for e in targets))
"""

import argparse
import json
import sys

from .logging import enable_debug, logger
from .config import InterceptConfig, OracleSettings, SolverSettings
from .errors import DomainError, InconsistentRootError, ScenarioError, UnknownFamilyError, UnknownTargetKindError
from .export import (
    OutputTarget,
    plot_residuals,
    render_svg,
    solve_report,
    time_grid,
    write_residual_csv,
    write_trace_csv,
)
from .families import FAMILIES, get_family
from .geometry import START, Configuration, metric
from .motion import ControlSchedule, ccc_endpoint, csc_endpoint, endpoint, integrate_ode
from .oracle import OracleResult, VerificationReport, brute_force_min_time, corrupt_result, verify_solution
from .scenario import Scenario, load_scenario
from .solver import CandidateResult, SolverResult, find_min_root, recover_schedule, residual_traces, solve, solve_async
from .targets import (
    circular_target,
    constant_wind,
    linear_uniform,
    mirror,
    rotating_point,
    sinusoidal_wind,
    static_target,
    wind_goal_target,
)

__all__ = [
    "main",
    "run",
    "logger",
    "solve",
    "solve_async",
    "find_min_root",
    "recover_schedule",
    "residual_traces",
    "brute_force_min_time",
    "verify_solution",
    "load_scenario",
    "CandidateResult",
    "SolverResult",
    "OracleResult",
    "VerificationReport",
    "SolverSettings",
    "OracleSettings",
    "InterceptConfig",
    "Scenario",
    "Configuration",
    "ControlSchedule",
    "START",
    "FAMILIES",
    "get_family",
    "metric",
    "endpoint",
    "csc_endpoint",
    "ccc_endpoint",
    "integrate_ode",
    "static_target",
    "rotating_point",
    "linear_uniform",
    "circular_target",
    "constant_wind",
    "sinusoidal_wind",
    "wind_goal_target",
    "mirror",
    "DomainError",
    "InconsistentRootError",
    "ScenarioError",
    "UnknownFamilyError",
    "UnknownTargetKindError",
]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_DISAGREE = 3


def _config(ns: argparse.Namespace, scenario: Scenario) -> InterceptConfig:
    return InterceptConfig(
        scenario.solver,
        scenario.oracle,
        scenario.horizon,
        horizon=ns.horizon,
        scan_step=ns.scan_step,
        tol=ns.tol,
        oracle_step=getattr(ns, "oracle_step", None),
        families=tuple(ns.family) if ns.family else None,
        exhaustive=getattr(ns, "exhaustive", False),
    )


def _solve(ns: argparse.Namespace) -> tuple[Scenario, InterceptConfig, SolverResult]:
    scenario = load_scenario(ns.scenario)
    cfg = _config(ns, scenario)
    result = solve(scenario.target, settings=cfg.solver)
    return scenario, cfg, result


def cmd_solve(ns: argparse.Namespace) -> int:
    scenario, _, result = _solve(ns)
    print(solve_report(result, scenario.description), end="")
    if ns.output:
        with open(ns.output, "w") as f:
            json.dump(result.to_dict(), f, indent=2)
        logger.info("Wrote result to %s", ns.output)
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def cmd_residuals(ns: argparse.Namespace) -> int:
    scenario = load_scenario(ns.scenario)
    cfg = _config(ns, scenario)
    t_max = cfg.solver.horizon if ns.t_max is None else ns.t_max
    if ns.grid <= 0 or t_max < ns.t_min or ns.t_min < 0:
        raise DomainError(f"Bad residual grid: step {ns.grid} on [{ns.t_min}, {t_max}]")
    times = time_grid(ns.t_min, t_max, ns.grid)
    traces = residual_traces(scenario.target, times, cfg.solver.families or None)
    with OutputTarget(ns.output) as out:
        write_residual_csv(out, times, traces)
    if ns.plot:
        plot_residuals(ns.plot, times, traces)
        logger.info("Wrote residual plot to %s", ns.plot)
    return EXIT_OK


def cmd_trace(ns: argparse.Namespace) -> int:
    scenario, _, result = _solve(ns)
    if not result.feasible:
        logger.error("No interception within the horizon")
        return EXIT_INFEASIBLE
    if ns.samples < 2:
        raise DomainError(f"--samples must be at least 2, got {ns.samples}")
    with OutputTarget(ns.output) as out:
        write_trace_csv(out, result, scenario.target, ns.samples)
    return EXIT_OK


def cmd_verify(ns: argparse.Namespace) -> int:
    scenario, cfg, result = _solve(ns)
    if not result.feasible:
        logger.error("No interception within the horizon")
        return EXIT_INFEASIBLE
    if ns.corrupt:
        result = corrupt_result(result)
    report = verify_solution(scenario.target, result, cfg.oracle)
    print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_DISAGREE


def cmd_svg(ns: argparse.Namespace) -> int:
    scenario, _, result = _solve(ns)
    if not result.feasible:
        logger.error("No interception within the horizon")
        return EXIT_INFEASIBLE
    if ns.markers < 1:
        raise DomainError(f"--markers must be positive, got {ns.markers}")
    render_svg(ns.svg, result, scenario.target, ns.markers)
    logger.info("Wrote figure to %s", ns.svg)
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("scenario", type=str, help="Path to a JSON scenario file")
    common.add_argument("--horizon", required=False, type=float, default=None, help="Largest interception time searched")
    common.add_argument("--scan-step", required=False, type=float, default=None, help="Grid step of the root scan")
    common.add_argument("--tol", required=False, type=float, default=None, help="Interception tolerance of the certification")
    common.add_argument(
        "--family",
        required=False,
        action="append",
        default=None,
        help="Restrict the search to a family, e.g. 'CSC(+1,-1)' or 'LSR'. May be repeated",
    )
    common.add_argument("--debug", action="store_true", help="Enable dubins_intercept debugging")

    parser = argparse.ArgumentParser(prog="dubins_intercept")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="Compute the minimum interception time")
    p.add_argument("--output", required=False, type=str, default="", help="Also write the result as JSON to this path")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("residuals", parents=[common], help="Tabulate the ten residual functions as CSV")
    p.add_argument("--grid", required=False, type=float, default=0.01, help="Time step of the table")
    p.add_argument("--t-min", required=False, type=float, default=0.0, help="First time of the table")
    p.add_argument("--t-max", required=False, type=float, default=None, help="Last time of the table (default: horizon)")
    p.add_argument("--output", required=False, type=str, default=None, help="Write the CSV here instead of stdout")
    p.add_argument("--plot", required=False, type=str, default="", help="Also plot the curves to this image path")
    p.set_defaults(func=cmd_residuals)

    p = sub.add_parser("trace", parents=[common], help="Sample the optimal trajectory and the target as CSV")
    p.add_argument("--samples", required=False, type=int, default=101, help="Number of rows")
    p.add_argument("--output", required=False, type=str, default=None, help="Write the CSV here instead of stdout")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("verify", parents=[common], help="Check the solution against the brute-force oracle")
    p.add_argument("--oracle-step", required=False, type=float, default=None, help="Oracle grid step for times and switch times")
    p.add_argument("--exhaustive", action="store_true", help="Search all three-piece controls with free signs")
    p.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("svg", parents=[common], help="Draw the interception as an SVG figure")
    p.add_argument("svg", type=str, help="Output SVG path")
    p.add_argument("--markers", required=False, type=int, default=8, help="Number of heading markers per path")
    p.set_defaults(func=cmd_svg)
    return parser


def run(argv: list[str]) -> int:
    """Run one command and return its exit status"""
    ns = _parser().parse_args(argv)
    if ns.debug:
        enable_debug()
    try:
        return ns.func(ns)
    except ScenarioError as e:
        logger.error("%s", e)
    except (DomainError, UnknownFamilyError) as e:
        logger.error("Invalid input: %s", e)
    except OSError as e:
        logger.error("%s: %s", e.filename or "output", e.strerror)
    return EXIT_INPUT


def main():
    """Command-line entrypoint for dubins_intercept"""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
