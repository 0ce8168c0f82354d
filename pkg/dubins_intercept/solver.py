"""Solver module

Minimal-root search over the ten residual families and selection of the
minimum-time interception. Every root is certified by recovering the
control schedule and checking its closed-form endpoint against the target,
so roots produced by the grid heuristics never reach the caller uncertified.
"""

import asyncio
import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable

import numpy as np
from scipy import optimize

from .config import SolverSettings
from .errors import DomainError, InconsistentRootError
from .families import FAMILIES, ResidualFamily, family_order, get_family
from .geometry import START, TWO_PI, Configuration, metric
from .logging import enable_debug, logger
from .motion import ControlSchedule, endpoint
from .targets import TargetTrajectory

ResidualFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class CandidateResult:
    """
    Outcome of one family's search. ``T`` and ``schedule`` are None when the
    family has no certified root within the horizon. ``brackets`` and
    ``grazes`` count the sign-change and tangency candidates examined and
    ``rejected`` those that failed certification.
    """

    family: ResidualFamily
    T: float | None
    schedule: ControlSchedule | None
    residual_at_T: float
    note: str = ""
    brackets: int = 0
    grazes: int = 0
    rejected: int = 0

    @property
    def feasible(self) -> bool:
        return self.T is not None

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": self.family.label,
            "path": self.family.path_name,
            "T": self.T,
            "residual_at_T": None if math.isnan(self.residual_at_T) else self.residual_at_T,
            "schedule": schedule_dict(self.schedule),
            "note": self.note,
            "brackets": self.brackets,
            "grazes": self.grazes,
            "rejected": self.rejected,
        }


@dataclass(frozen=True)
class SolverResult:
    t_star: float | None
    winner: ResidualFamily | None
    schedule: ControlSchedule | None
    all_candidates: tuple[CandidateResult, ...]
    interception: Configuration | None = None
    settings: SolverSettings = field(default_factory=SolverSettings)

    @property
    def feasible(self) -> bool:
        return self.t_star is not None

    def to_dict(self) -> dict[str, Any]:
        point = self.interception
        return {
            "t_star": self.t_star,
            "winner": None if self.winner is None else self.winner.label,
            "schedule": schedule_dict(self.schedule),
            "interception": None if point is None else {"x": point.x, "y": point.y, "phi": point.phi},
            "candidates": [c.to_dict() for c in self.all_candidates],
        }


def schedule_dict(sched: ControlSchedule | None) -> dict[str, Any] | None:
    if sched is None:
        return None
    return {"kind": sched.kind, "s": sched.s, "sigma": sched.sigma, "tau1": sched.tau1, "tau2": sched.tau2}


class _RootScan:
    """Bookkeeping of one find_min_root call"""

    def __init__(self):
        self.brackets = 0
        self.grazes = 0
        self.rejected = 0


def _scalar(f: ResidualFn) -> Callable[[float], float]:
    return lambda t: float(np.asarray(f(np.asarray(t, dtype=float))))


def _grid(t_lo: float, t_hi: float, scan_step: float) -> np.ndarray:
    n = max(1, math.ceil((t_hi - t_lo) / scan_step - 1e-9))
    return np.linspace(t_lo, t_hi, n + 1)


def _bisect(fs: Callable[[float], float], a: float, b: float, fa: float, fb: float, root_tol: float) -> float | None:
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    try:
        return float(optimize.bisect(fs, a, b, xtol=root_tol, maxiter=200))
    except (ValueError, RuntimeError) as exc:
        logger.debug("Bisection on [%s, %s] failed: %s", a, b, exc)
        return None


def _graze(fs: Callable[[float], float], a: float, b: float, root_tol: float, value_tol: float) -> float | None:
    def objective(t: float) -> float:
        v = fs(t)
        return math.inf if math.isnan(v) else abs(v)

    res = optimize.minimize_scalar(objective, bounds=(a, b), method="bounded", options={"xatol": root_tol})
    t = float(res.x)
    if objective(t) <= value_tol:
        return t
    return None


def find_min_root(
    f: ResidualFn,
    t_lo: float,
    t_hi: float,
    scan_step: float,
    root_tol: float,
    value_tol: float = 1e-6,
    jump_guard: float = math.pi,
    graze_slope: float = 10.0,
    certify: Callable[[float], bool] | None = None,
    scan: _RootScan | None = None,
) -> float | None:
    """Smallest certified root of a residual with gaps and jumps

    ``f`` is evaluated once on the grid t_lo, t_lo + h, ..., t_hi with
    h <= scan_step. Only neighbouring grid points where f is defined are
    compared. A sign change with |Δf| < jump_guard is refined by bisection;
    larger sign changes are wrap-around jumps and are skipped. Local minima
    of |f| below value_tol + graze_slope*h with no refinable sign change in
    either neighbouring cell are refined by bounded minimisation of |f| over
    those two cells and kept when the minimum is within value_tol.

    Args:
      f: Vectorised residual; NaN marks undefined points
      t_lo: Left end of the search interval
      t_hi: Right end of the search interval
      scan_step: Largest grid spacing
      root_tol: Bisection window and minimiser tolerance
      value_tol: Largest |f| accepted at a tangency root
      jump_guard: Smallest jump treated as a discontinuity
      graze_slope: Slope allowance of the tangency pre-filter
      certify: Predicate a root must satisfy; every root passes when None

    Returns:
      float | None: The smallest accepted root, or None

    Raises:
      DomainError: t_lo > t_hi or a non-positive step
    """
    if t_lo > t_hi:
        raise DomainError(f"find_min_root requires t_lo <= t_hi, got {t_lo} > {t_hi}")
    if not (scan_step > 0.0 and root_tol > 0.0):
        raise DomainError("find_min_root requires positive scan_step and root_tol")
    scan = scan or _RootScan()
    fs = _scalar(f)
    if t_lo == t_hi:
        grid = np.array([t_lo])
    else:
        grid = _grid(t_lo, t_hi, scan_step)
    h = grid[1] - grid[0] if grid.size > 1 else 0.0
    vals = np.broadcast_to(np.asarray(f(grid), dtype=float), grid.shape)
    defined = np.isfinite(vals)
    last = grid.size - 1

    candidates: list[tuple[float, str, int]] = []
    cross = np.zeros(max(grid.size - 1, 0), dtype=bool)
    if grid.size > 1:
        fa, fb = vals[:-1], vals[1:]
        with np.errstate(invalid="ignore"):
            cross = defined[:-1] & defined[1:] & (fa * fb <= 0.0) & (np.abs(fb - fa) < jump_guard)
        candidates += [(float(grid[i]), "bracket", int(i)) for i in np.flatnonzero(cross)]
    elif defined[0] and vals[0] == 0.0:
        candidates.append((float(grid[0]), "bracket", 0))

    absf = np.where(defined, np.abs(vals), np.inf)
    threshold = value_tol + graze_slope * h
    for i in np.flatnonzero(defined & (absf <= threshold)):
        left_ok = i == 0 or absf[i] < absf[i - 1]
        right_ok = i == last or absf[i] <= absf[i + 1]
        # a sign change in a neighbouring cell is left to bisection
        bracketed = (i > 0 and cross[i - 1]) or (i < last and cross[i])
        if left_ok and right_ok and not bracketed:
            candidates.append((float(grid[max(i - 1, 0)]), "graze", int(i)))

    candidates.sort(key=lambda c: c[0])
    best: float | None = None
    for start, kind, i in candidates:
        if best is not None and start > best:
            break
        if kind == "bracket":
            scan.brackets += 1
            if grid.size == 1:
                root = float(grid[0])
            else:
                root = _bisect(fs, float(grid[i]), float(grid[i + 1]), float(vals[i]), float(vals[i + 1]), root_tol)
        else:
            scan.grazes += 1
            a, b = float(grid[max(i - 1, 0)]), float(grid[min(i + 1, last)])
            root = float(grid[i]) if a == b and absf[i] <= value_tol else _graze(fs, a, b, root_tol, value_tol)
        if root is None:
            continue
        if certify is not None and not certify(root):
            scan.rejected += 1
            logger.debug("Root candidate %s (%s) failed certification", root, kind)
            continue
        if best is None or root < best:
            best = root
    return best


def recover_schedule(family: ResidualFamily, T: float, e: TargetTrajectory) -> ControlSchedule:
    """Control schedule of ``family`` intercepting ``e`` at its root ``T``

    CSC and CCC families read tau1 and tau2 off the residual chain at T.
    SC gives the fixed form (+1, +1, 0, T - 2π) and CC the arc-then-circle
    schedule turning towards sgn x_E(T).

    Raises:
      InconsistentRootError: The family's chain is undefined at T
      DomainError: T is outside the family's domain
    """
    return family.recover(T, e)


def _certified(
    family: ResidualFamily, T: float, e: TargetTrajectory, settings: SolverSettings
) -> tuple[ControlSchedule, Configuration] | None:
    try:
        sched = recover_schedule(family, T, e)
        reached = endpoint(sched, T)
    except (DomainError, InconsistentRootError) as exc:
        logger.debug("%s at T=%s has no valid schedule: %s", family, T, exc)
        return None
    if sched.tau2 > T + 1e-12:
        return None
    if family.t_min == 0.0 and T - sched.tau2 >= TWO_PI:
        return None
    if metric(reached, e(T)) > settings.interception_tol:
        return None
    return sched, reached


def search_family(family: ResidualFamily, e: TargetTrajectory, settings: SolverSettings) -> CandidateResult:
    """Minimal certified root of one family within the horizon"""
    t_lo, t_hi = family.t_min, settings.horizon
    if t_hi < t_lo:
        return CandidateResult(family, None, None, math.nan, note="domain starts beyond the horizon")
    scan = _RootScan()
    T = find_min_root(
        lambda t: family.residual_on(t, e),
        t_lo,
        t_hi,
        settings.scan_step,
        settings.root_tol,
        value_tol=settings.value_tol,
        jump_guard=settings.jump_guard,
        graze_slope=settings.graze_slope,
        certify=lambda t: _certified(family, t, e, settings) is not None,
        scan=scan,
    )
    counts = {"brackets": scan.brackets, "grazes": scan.grazes, "rejected": scan.rejected}
    if scan.rejected:
        logger.warning("%s: %d root candidate(s) rejected by certification", family, scan.rejected)
    if T is None:
        logger.debug("%s: no root on [%s, %s]", family, t_lo, t_hi)
        return CandidateResult(family, None, None, math.nan, note="no certified root", **counts)
    sched, _ = _certified(family, T, e, settings)
    value = family.residual(T, e)
    logger.debug("%s: root at T=%s, schedule %s", family, T, sched)
    return CandidateResult(family, T, sched, math.nan if value is None else value, **counts)


def _families(settings: SolverSettings, families) -> tuple[ResidualFamily, ...]:
    chosen = families if families is not None else settings.families
    if not chosen:
        return FAMILIES
    resolved = {get_family(f) if isinstance(f, str) else f for f in chosen}
    return tuple(fam for fam in FAMILIES if fam in resolved)


def _start_result(e: TargetTrajectory, settings: SolverSettings, fams) -> SolverResult:
    # the empty CSC(+1,+1) schedule stands for every family at T = 0
    sched = ControlSchedule.csc(1, 1, 0.0, 0.0)
    winner = FAMILIES[0]
    candidates = []
    for fam in fams:
        if fam == winner:
            candidates.append(CandidateResult(fam, 0.0, sched, 0.0, note="target starts at the car"))
        else:
            candidates.append(CandidateResult(fam, None, None, math.nan, note="not searched, T* = 0"))
    return SolverResult(0.0, winner, sched, tuple(candidates), e(0.0), settings)


async def solve_async(
    e: TargetTrajectory,
    horizon: float | None = None,
    settings: SolverSettings | None = None,
    families=None,
    debug: bool = False,
) -> SolverResult:
    """Minimum-time lateral interception of ``e``

    The family searches run concurrently in worker threads. The winner is
    the feasible candidate with the smallest T; candidates within root_tol
    of it are resolved by the fixed family order.

    Args:
      e: Target trajectory
      horizon: Overrides ``settings.horizon``
      settings: Solver settings, defaults when None
      families: Labels or family objects restricting the search
      debug: Enable debug logging

    Returns:
      SolverResult: The winner, or t_star None if no family is feasible

    Raises:
      DomainError: Non-positive horizon
      UnknownFamilyError: A family label cannot be resolved
    """
    if debug:
        enable_debug()
    settings = settings or SolverSettings()
    if horizon is not None:
        settings = replace(settings, horizon=horizon)
    fams = _families(settings, families)

    gap = metric(e(0.0), START)
    if gap <= settings.interception_tol:
        logger.info("Target starts at the car (distance %s), T* = 0", gap)
        return _start_result(e, settings, fams)

    candidates = await asyncio.gather(*[asyncio.to_thread(search_family, fam, e, settings) for fam in fams])
    feasible = [c for c in candidates if c.feasible]
    if not feasible:
        logger.info("No family intercepts within the horizon %s", settings.horizon)
        return SolverResult(None, None, None, tuple(candidates), None, settings)

    t_min = min(c.T for c in feasible)
    tied = [c for c in feasible if c.T <= t_min + settings.root_tol]
    best = min(tied, key=lambda c: family_order(c.family))
    reached = endpoint(best.schedule, best.T)
    logger.info("T* = %s by %s", best.T, best.family)
    return SolverResult(best.T, best.family, best.schedule, tuple(candidates), reached, settings)


def solve(
    e: TargetTrajectory,
    horizon: float | None = None,
    settings: SolverSettings | None = None,
    families=None,
    debug: bool = False,
) -> SolverResult:
    """Blocking wrapper around :func:`solve_async`

    Runs the search on a fresh event loop. Code already running inside an
    event loop must ``await solve_async(...)`` instead.

    Raises:
      RuntimeError: Called while an event loop is running in this thread
    """
    try:
        asyncio.get_running_loop()
    except RuntimeError:
        return asyncio.run(solve_async(e, horizon=horizon, settings=settings, families=families, debug=debug))
    raise RuntimeError("solve() cannot run inside a running event loop, await solve_async() instead")


def residual_traces(
    e: TargetTrajectory, times: np.ndarray, families=None
) -> dict[ResidualFamily, np.ndarray]:
    """Residual of each family on ``times``; NaN where undefined or below the family's domain"""
    times = np.asarray(times, dtype=float)
    traces = {}
    for fam in _families(SolverSettings(), families):
        values = np.full(times.shape, np.nan)
        inside = times >= fam.t_min
        if np.any(inside):
            values[inside] = fam.residual_on(times[inside], e)
        traces[fam] = values
    return traces
