"""Report, CSV and figure output

Text reports and CSV tables are written to a stream (standard output or a
file opened by :class:`OutputTarget`). Figures are drawn with matplotlib
without touching pyplot state, so they can be produced from worker code.
"""

import csv
import math
import sys
from pathlib import Path
from typing import Iterable, TextIO

import numpy as np
from matplotlib.figure import Figure
from matplotlib.patches import Circle, Polygon

from .families import ResidualFamily
from .geometry import Configuration
from .motion import endpoint, sample_trajectory
from .solver import SolverResult
from .targets import TargetTrajectory

RESIDUAL_HEADER = ("t", "family", "F")
TRACE_HEADER = ("t", "x", "y", "phi", "u", "xe", "ye", "phie")

SOLVE_TEMPLATE = """{headline}
{description}signs: {signs}
interception: x={x}, y={y}, phi={phi}
candidates:
{candidates}
"""


def fmt(v: float) -> str:
    """Nine significant digits; undefined values print as ``nan``"""
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return "nan"
    return f"{float(v):.9g}"


class OutputTarget:
    """Context manager for command output

    Yields an open text stream: the file at ``path`` when one is given,
    standard output otherwise. Files are opened with ``newline=""`` so CSV
    rows end in a bare newline on every platform.
    """

    def __init__(self, path: str | Path | None):
        self.path = path
        self.stream: TextIO | None = None

    def __enter__(self) -> TextIO:
        if self.path is None or str(self.path) == "-":
            return sys.stdout
        self.stream = open(self.path, "w", newline="")
        return self.stream

    def __exit__(self, type, value, traceback):
        if self.stream is not None:
            self.stream.close()


def time_grid(t_lo: float, t_hi: float, step: float) -> np.ndarray:
    """t_lo, t_lo + step, ... up to t_hi, built from integer multiples of step"""
    n = int(math.floor((t_hi - t_lo) / step + 1e-9))
    return t_lo + step * np.arange(n + 1)


def write_residual_csv(stream: TextIO, times: np.ndarray, traces: dict[ResidualFamily, np.ndarray]) -> None:
    """One ``t,family,F`` row per family and grid time, families in tie-break order"""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(RESIDUAL_HEADER)
    for fam, values in traces.items():
        for t, v in zip(times, values):
            writer.writerow((fmt(t), fam.label, fmt(v)))


def trace_rows(result: SolverResult, e: TargetTrajectory, n: int) -> list[tuple]:
    """Samples of the optimal trajectory and the target at ``n`` uniform times of [0, T*]"""
    rows = []
    for sample in sample_trajectory(result.schedule, result.t_star, n):
        tgt = e(sample.t)
        c = sample.config
        rows.append((sample.t, c.x, c.y, c.phi, sample.u, tgt.x, tgt.y, tgt.phi))
    return rows


def write_trace_csv(stream: TextIO, result: SolverResult, e: TargetTrajectory, n: int) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    for row in trace_rows(result, e, n):
        writer.writerow(tuple(str(v) if isinstance(v, int) else fmt(v) for v in row))


def _signs(result: SolverResult) -> str:
    fam = result.winner
    if fam.kind == "CSC":
        return f"s={fam.signs[0]:+d}, sigma={fam.signs[1]:+d}"
    if fam.kind == "CCC":
        return f"s={fam.signs[0]:+d}, mu={fam.signs[1]:+d}"
    sched = result.schedule
    if sched.kind == "CSC":
        return f"s={sched.s:+d}, sigma={sched.sigma:+d}"
    return f"s={sched.s:+d}"


def _candidate_lines(result: SolverResult) -> Iterable[str]:
    for c in result.all_candidates:
        if c.feasible:
            yield f"  {c.family.label:<11} {c.family.path_name:<10} T={c.T:.9g}"
        else:
            yield f"  {c.family.label:<11} {c.family.path_name:<10} infeasible ({c.note})"


def solve_report(result: SolverResult, description: str = "") -> str:
    """Human-readable summary of a solver result"""
    if not result.feasible:
        lines = "\n".join(_candidate_lines(result))
        return f"infeasible within horizon {result.settings.horizon:.6g}\ncandidates:\n{lines}\n"
    sched, point = result.schedule, result.interception
    headline = (
        f"T* = {result.t_star:.6f}, family {result.winner.label}, "
        f"tau1={sched.tau1:.6g}, tau2={sched.tau2:.6g}"
    )
    return SOLVE_TEMPLATE.format_map(
        {
            "headline": headline,
            "description": f"{description}\n" if description else "",
            "signs": _signs(result),
            "x": fmt(point.x),
            "y": fmt(point.y),
            "phi": fmt(point.phi),
            "candidates": "\n".join(_candidate_lines(result)),
        }
    )


def marker_positions(result: SolverResult, e: TargetTrajectory, n: int) -> tuple[list[Configuration], list[Configuration]]:
    """Car and target configurations at ``n`` uniform times of [0, T*], last one at T*"""
    times = np.linspace(0.0, result.t_star, n) if n > 1 else np.array([result.t_star])
    car = [endpoint(result.schedule, float(t)) for t in times]
    tgt = [e(float(t)) for t in times]
    return car, tgt


def _triangle(c: Configuration, size: float) -> np.ndarray:
    tip = np.array([math.cos(c.phi), math.sin(c.phi)])
    side = np.array([-tip[1], tip[0]])
    centre = np.array([c.x, c.y])
    return np.array([centre + size * tip, centre - 0.5 * size * tip + 0.5 * size * side, centre - 0.5 * size * tip - 0.5 * size * side])


def render_svg(path: str | Path, result: SolverResult, e: TargetTrajectory, markers: int = 8, samples: int = 400) -> None:
    """Planar figure of the interception

    The car path is solid and the target path dashed. Triangles point along
    the heading, filled black for the car and light for the target. The two
    initial turn circles are drawn dotted.

    Raises:
      OSError: ``path`` cannot be written
    """
    times = np.linspace(0.0, result.t_star, max(samples, 2))
    car = [endpoint(result.schedule, float(t)) for t in times]
    tx, ty, _ = e.evaluate(times)

    fig = Figure(figsize=(6, 6))
    ax = fig.add_subplot()
    ax.set_aspect("equal")
    for gid, centre in (("turn-circle-left", (-1.0, 0.0)), ("turn-circle-right", (1.0, 0.0))):
        ax.add_patch(Circle(centre, 1.0, fill=False, linestyle=":", linewidth=0.6, edgecolor="0.6", gid=gid))
    (line,) = ax.plot([c.x for c in car], [c.y for c in car], "-", color="black", linewidth=1.2)
    line.set_gid("car-path")
    (line,) = ax.plot(np.atleast_1d(tx), np.atleast_1d(ty), "--", color="0.4", linewidth=1.0)
    line.set_gid("target-path")

    car_marks, tgt_marks = marker_positions(result, e, markers)
    for i, (c, g) in enumerate(zip(car_marks, tgt_marks)):
        ax.add_patch(Polygon(_triangle(g, 0.25), closed=True, facecolor="0.85", edgecolor="0.4", gid=f"target-marker-{i}"))
        ax.add_patch(Polygon(_triangle(c, 0.25), closed=True, facecolor="black", edgecolor="black", gid=f"car-marker-{i}"))
    ax.autoscale_view()
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"T* = {result.t_star:.6g} ({result.winner.path_name})")
    fig.savefig(path, format="svg")


def plot_residuals(path: str | Path, times: np.ndarray, traces: dict[ResidualFamily, np.ndarray]) -> None:
    """Residual curves of every family; undefined stretches show as gaps"""
    fig = Figure(figsize=(8, 5))
    ax = fig.add_subplot()
    for fam, values in traces.items():
        ax.plot(times, values, linewidth=0.9, label=f"{fam.label} {fam.path_name}")
    ax.axhline(0.0, color="black", linewidth=0.5)
    ax.set_xlabel("T")
    ax.set_ylabel("F(T)")
    ax.legend(fontsize="small", ncol=2)
    fig.savefig(path)

