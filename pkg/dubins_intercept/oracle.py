"""Oracle module

Brute-force grid search for an approximate minimum interception time and
the verification of solver results against it. The oracle walks the time
grid upwards and stops at the first time where some gridded control
schedule ends within the position and heading tolerances of the target,
so its answer is an upper bound on the optimum up to the grid resolution.
"""

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .config import OracleSettings
from .errors import DomainError
from .geometry import HALF_PI, START, TWO_PI, Configuration, angle_abs, metric, real_mod
from .logging import logger
from .motion import (
    ControlSchedule,
    advance_arrays,
    ccc_endpoint_arrays,
    csc_endpoint_arrays,
    endpoint,
    integrate_ode,
)
from .solver import SolverResult
from .targets import TargetTrajectory

ODE_AGREEMENT = 1e-7


@dataclass(frozen=True)
class OracleResult:
    """
    First grid time at which the oracle finds an interception. ``schedule``
    is None in exhaustive mode, where ``pieces`` holds the (duration,
    control) triple instead, and when the horizon is exhausted.
    """

    T_approx: float | None
    schedule: ControlSchedule | None
    achieved_distance: float
    pieces: tuple[tuple[float, int], ...] = ()

    @property
    def feasible(self) -> bool:
        return self.T_approx is not None


@dataclass
class _Best:
    distance: float = math.inf
    schedule: ControlSchedule | None = None
    pieces: tuple[tuple[float, int], ...] = ()


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    """lo, lo + step, ... up to hi inclusive (within rounding)"""
    if hi < lo:
        return np.empty(0)
    return lo + step * np.arange(int(math.floor((hi - lo) / step + 1e-9)) + 1)


def _accept(x, y, phi, e_t: Configuration, settings: OracleSettings):
    pos = np.hypot(x - e_t.x, y - e_t.y)
    head = np.asarray(angle_abs(phi - e_t.phi))
    ok = (pos <= settings.position_tol) & (head <= settings.heading_tol)
    return ok, np.sqrt(pos**2 + head**2)


def _csc_at(t: float, e_t: Configuration, settings: OracleSettings, best: _Best) -> None:
    step, tol = settings.tau_step, settings.heading_tol
    tau1 = _grid(0.0, min(t, TWO_PI - 1e-12), step)
    width = int(math.ceil(tol / step)) + 1
    offsets = np.arange(-width, width + 1)
    periods = np.arange(-1, int(math.ceil(t / TWO_PI)) + 2)
    for s, sigma in itertools.product((1, -1), (1, -1)):
        # final arc length L = t - tau2 must satisfy sigma*L = phi_E - π/2 - s*tau1 on the circle
        m = np.asarray(real_mod(sigma * (e_t.phi - HALF_PI - s * tau1), TWO_PI))
        centre = m[:, None] + TWO_PI * periods[None, :]
        j = np.rint((t - tau1[:, None] - centre) / step)[:, :, None] + offsets
        t1 = np.broadcast_to(tau1[:, None, None], j.shape)
        t2 = t1 + j * step
        keep = (j >= 0) & (t2 <= t + 1e-12)
        t1 = np.concatenate([t1[keep], tau1])
        t2 = np.concatenate([np.minimum(t2[keep], t), np.full_like(tau1, t)])
        x, y, phi = csc_endpoint_arrays(s, sigma, t1, t2, t)
        ok, dist = _accept(x, y, phi, e_t, settings)
        if np.any(ok):
            k = np.flatnonzero(ok)[np.argmin(dist[ok])]
            if dist[k] < best.distance:
                best.distance = float(dist[k])
                best.schedule = ControlSchedule.csc(s, sigma, float(t1[k]), float(t2[k]))


def _ccc_at(t: float, e_t: Configuration, settings: OracleSettings, best: _Best) -> None:
    step = settings.tau_step
    tau1 = _grid(0.0, min(t, TWO_PI - 1e-12), step)
    middle = _grid(0.0, min(t, TWO_PI - 1e-12), step)
    for s in (1, -1):
        # terminal heading is π/2 + s*(t - 2*middle), so only middle matters here
        head = np.asarray(angle_abs(HALF_PI + s * (t - 2.0 * middle) - e_t.phi))
        mids = middle[head <= settings.heading_tol]
        if mids.size == 0:
            continue
        t1, mid = np.meshgrid(tau1, mids, indexing="ij")
        t2 = t1 + mid
        keep = t2 <= t + 1e-12
        t1, t2 = t1[keep], np.minimum(t2[keep], t)
        x, y, phi = ccc_endpoint_arrays(s, t1, t2, t)
        ok, dist = _accept(x, y, phi, e_t, settings)
        if np.any(ok):
            k = np.flatnonzero(ok)[np.argmin(dist[ok])]
            if dist[k] < best.distance:
                best.distance = float(dist[k])
                best.schedule = ControlSchedule.ccc(s, float(t1[k]), float(t2[k]))


def _pieces_at(t: float, e_t: Configuration, settings: OracleSettings, best: _Best) -> None:
    step = settings.tau_step
    d1, d2 = np.meshgrid(_grid(0.0, t, step), _grid(0.0, t, step), indexing="ij")
    keep = d1 + d2 <= t + 1e-12
    d1, d2 = d1[keep], d2[keep]
    d3 = np.maximum(t - d1 - d2, 0.0)
    for u1, u2, u3 in itertools.product((1, 0, -1), repeat=3):
        head = np.asarray(angle_abs(HALF_PI + u1 * d1 + u2 * d2 + u3 * d3 - e_t.phi))
        sel = head <= settings.heading_tol
        if not np.any(sel):
            continue
        x, y, phi = advance_arrays(START.x, START.y, START.phi, u1, d1[sel])
        x, y, phi = advance_arrays(x, y, phi, u2, d2[sel])
        x, y, phi = advance_arrays(x, y, phi, u3, d3[sel])
        ok, dist = _accept(x, y, phi, e_t, settings)
        if np.any(ok):
            k = np.flatnonzero(ok)[np.argmin(dist[ok])]
            if dist[k] < best.distance:
                best.distance = float(dist[k])
                idx = np.flatnonzero(sel)[k]
                best.pieces = ((float(d1[idx]), u1), (float(d2[idx]), u2), (float(d3[idx]), u3))


def brute_force_min_time(e: TargetTrajectory, settings: OracleSettings | None = None) -> OracleResult:
    """Approximate minimum interception time by grid search

    In the default mode every CSC and CCC schedule with switch times on the
    tau_step grid is evaluated in closed form at each time of the t_step
    grid. Only switch times whose terminal heading is within heading_tol of
    the target are evaluated, which gives the same answer as enumerating
    them all. In exhaustive mode every three-piece control with controls in
    {-1, 0, +1} and gridded durations is tried instead.

    Args:
      e: Target trajectory
      settings: Oracle grid and tolerances

    Returns:
      OracleResult: The first feasible grid time, or T_approx None
    """
    settings = settings or OracleSettings()
    logger.debug("Oracle search with %s", settings)
    for t in _grid(0.0, settings.horizon, settings.t_step):
        t = float(t)
        e_t = e(t)
        best = _Best()
        if settings.exhaustive:
            _pieces_at(t, e_t, settings, best)
        else:
            _csc_at(t, e_t, settings, best)
            _ccc_at(t, e_t, settings, best)
        if best.schedule is not None or best.pieces:
            logger.debug("Oracle feasible at t=%s with distance %s", t, best.distance)
            return OracleResult(t, best.schedule, best.distance, best.pieces)
    logger.info("Oracle found no interception up to %s", settings.horizon)
    return OracleResult(None, None, math.inf)


@dataclass
class VerificationReport:
    """
    Outcome of checking a solver result. ``passed`` requires the schedule
    to be admissible, the closed-form and integrated endpoints to meet the
    target, and the oracle time to lie within ``window`` of T*.
    """

    t_star: float
    t_approx: float | None
    window: float
    closed_form_distance: float
    ode_distance: float
    ode_gap: float
    schedule_ok: bool
    endpoint_ok: bool
    ode_ok: bool
    agreement_ok: bool
    minimality_ok: bool
    messages: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.schedule_ok and self.endpoint_ok and self.ode_ok and self.agreement_ok and self.minimality_ok

    def lines(self) -> list[str]:
        approx = "none" if self.t_approx is None else f"{self.t_approx:.6f}"
        out = [
            f"T* = {self.t_star:.6f}",
            f"oracle T = {approx} (window {self.window:.6f})",
            f"closed-form endpoint distance = {self.closed_form_distance:.3e}",
            f"integrated endpoint distance = {self.ode_distance:.3e}",
            f"closed form vs integration = {self.ode_gap:.3e}",
        ]
        out += self.messages
        out.append("PASS" if self.passed else "FAIL")
        return out


def corrupt_result(result: SolverResult, delta: float = 0.1) -> SolverResult:
    """Copy of ``result`` with tau2 moved by ``delta``

    The shift is reversed when tau2 + delta would pass T*, where the endpoint
    would silently ignore it, or when it makes the schedule inadmissible.
    """
    if result.schedule.tau2 + delta > result.t_star:
        delta = -delta
    try:
        sched = result.schedule.shifted(delta)
    except DomainError:
        sched = result.schedule.shifted(-delta)
    logger.warning("Corrupting schedule %s to %s", result.schedule, sched)
    return SolverResult(
        result.t_star, result.winner, sched, result.all_candidates, result.interception, result.settings
    )


def verify_solution(
    e: TargetTrajectory, result: SolverResult, settings: OracleSettings | None = None
) -> VerificationReport:
    """Check a feasible solver result against closed forms, integration and the oracle

    Args:
      e: Target trajectory the result was computed for
      result: Feasible solver result
      settings: Oracle settings

    Returns:
      VerificationReport: Individual checks and the overall verdict

    Raises:
      DomainError: ``result`` is infeasible
    """
    if not result.feasible:
        raise DomainError("verify_solution requires a feasible result")
    settings = settings or OracleSettings()
    sched, t_star = result.schedule, result.t_star
    tol = result.settings.interception_tol
    messages = []

    schedule_ok = sched.tau2 <= t_star + 1e-12
    if not schedule_ok:
        messages.append(f"second switch {sched.tau2:.6f} is after the interception time")

    target = e(t_star)
    closed = endpoint(sched, t_star)
    integrated = integrate_ode(sched, t_star, settings.ode_step)
    closed_d = metric(closed, target)
    ode_d = metric(integrated, target)
    gap = metric(closed, integrated)
    endpoint_ok = closed_d <= tol
    ode_ok = ode_d <= tol + ODE_AGREEMENT and gap <= ODE_AGREEMENT
    if not endpoint_ok:
        messages.append(f"endpoint mismatch: closed form misses the target by {closed_d:.3e}")
    if not ode_ok:
        messages.append(f"endpoint mismatch: integration misses the target by {ode_d:.3e}")

    window = settings.agreement_window + 1e-9
    oracle_settings = replace(settings, horizon=min(settings.horizon, t_star + window + settings.t_step))
    oracle = brute_force_min_time(e, oracle_settings)
    agreement_ok = oracle.feasible and abs(t_star - oracle.T_approx) <= window
    minimality_ok = not oracle.feasible or oracle.T_approx >= t_star - window
    if not oracle.feasible:
        messages.append("oracle found no interception near T*")
    elif not agreement_ok:
        messages.append(f"oracle time {oracle.T_approx:.6f} disagrees with T*")
    if not minimality_ok:
        messages.append("oracle intercepts earlier than T*")

    report = VerificationReport(
        t_star,
        oracle.T_approx,
        window,
        closed_d,
        ode_d,
        gap,
        schedule_ok,
        endpoint_ok,
        ode_ok,
        agreement_ok,
        minimality_ok,
        messages,
    )
    logger.info("Verification %s for T*=%s", "passed" if report.passed else "failed", t_star)
    return report
