"""Sweeping the entropic index and locating abrupt threshold jumps.

As q moves across (0, 1) the optimal thresholds of some histograms leap by
tens of gray levels at a critical value, flipping the segmented image's
appearance. This module records the threshold-versus-q curve on a grid,
flags adjacent grid points where any threshold moves by at least J levels,
and bisects each bracket down to a critical q.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

from .histogram import GrayDistribution
from .optimizer import ThresholdSet, optimize

__all__ = [
    "SweepConfig",
    "CurveRow",
    "ThresholdCurve",
    "Transition",
    "GradualDrift",
    "TransitionReport",
    "q_grid",
    "sweep",
    "detect_transitions",
    "refine_transition",
    "find_transitions",
    "curve_to_csv",
    "report_to_csv",
]

DEFAULT_Q_MIN = 0.01
DEFAULT_Q_MAX = 0.99
DEFAULT_Q_STEP = 0.005
DEFAULT_JUMP = 16
DEFAULT_REFINE_TOL = 1e-3


@dataclass(frozen=True)
class SweepConfig:
    """Grid and detection parameters for a q sweep.

    jump_threshold is the minimum per-threshold move, in gray levels, that
    counts as a transition; refine_tol is the bracket width in q below which
    a bracket is reported as critical.
    """

    q_min: float = DEFAULT_Q_MIN
    q_max: float = DEFAULT_Q_MAX
    q_step: float = DEFAULT_Q_STEP
    m: int = 2
    jump_threshold: int = DEFAULT_JUMP
    refine_tol: float = DEFAULT_REFINE_TOL

    def __post_init__(self) -> None:
        if not 0.0 < self.q_min < self.q_max < 1.0:
            raise ValueError(
                f"need 0 < q_min < q_max < 1, got q_min={self.q_min}, q_max={self.q_max}"
            )
        if not self.q_step > 0.0:
            raise ValueError(f"q_step must be positive, got {self.q_step}")
        if self.q_step > self.q_max - self.q_min:
            raise ValueError(
                f"q_step {self.q_step} exceeds the grid span {self.q_max - self.q_min}"
            )
        if self.m < 2:
            raise ValueError(f"class count must be at least 2, got {self.m}")
        if self.jump_threshold < 1:
            raise ValueError(f"jump threshold must be at least 1, got {self.jump_threshold}")
        if not self.refine_tol > 0.0:
            raise ValueError(f"refine_tol must be positive, got {self.refine_tol}")


@dataclass(frozen=True)
class CurveRow:
    q: float
    thresholds: ThresholdSet
    entropy: float


@dataclass(frozen=True)
class ThresholdCurve:
    """Optimal thresholds and total entropy per grid value of q, q ascending."""

    rows: tuple[CurveRow, ...]

    @property
    def class_count(self) -> int:
        return self.rows[0].thresholds.class_count


@dataclass(frozen=True)
class Transition:
    """An abrupt threshold jump localized to a bracket of width <= refine_tol."""

    q_low: float
    q_high: float
    critical_q: float
    jumps: tuple[int, ...]
    below: ThresholdSet
    above: ThresholdSet

    @property
    def max_jump(self) -> int:
        return max(self.jumps)


@dataclass(frozen=True)
class GradualDrift:
    """A bracket whose endpoint jump dissolved into sub-threshold steps."""

    q_low: float
    q_high: float
    below: ThresholdSet
    above: ThresholdSet


@dataclass(frozen=True)
class TransitionReport:
    """All refined jumps of a sweep, plus brackets that turned out gradual."""

    transitions: tuple[Transition, ...]
    gradual: tuple[GradualDrift, ...] = field(default=())


def q_grid(cfg: SweepConfig) -> list[float]:
    """Grid points q_min, q_min + q_step, ... up to q_max inclusive."""
    span = cfg.q_max - cfg.q_min
    # tolerate accumulated rounding so q_max itself stays on the grid
    n = int(span / cfg.q_step + 1e-9)
    return [cfg.q_min + k * cfg.q_step for k in range(n + 1)]


def _max_jump(a: ThresholdSet, b: ThresholdSet) -> int:
    return max(abs(x - y) for x, y in zip(a.levels, b.levels))


def sweep(d: GrayDistribution, cfg: SweepConfig) -> ThresholdCurve:
    """Optimize the thresholds at every grid point of q."""
    rows = []
    for q in q_grid(cfg):
        r = optimize(d, cfg.m, q)
        rows.append(CurveRow(q, r.thresholds, r.entropy))
    return ThresholdCurve(tuple(rows))


def detect_transitions(curve: ThresholdCurve, jump_threshold: int) -> list[tuple[float, float]]:
    """Adjacent grid brackets (q_j, q_{j+1}) where a threshold moves >= jump_threshold."""
    if len(curve.rows) < 2:
        raise ValueError("jump detection needs a curve with at least 2 rows")
    brackets = []
    for lo, hi in zip(curve.rows, curve.rows[1:]):
        if _max_jump(lo.thresholds, hi.thresholds) >= jump_threshold:
            brackets.append((lo.q, hi.q))
    return brackets


def refine_transition(
    d: GrayDistribution,
    m: int,
    bracket: tuple[float, float],
    jump_threshold: int,
    refine_tol: float,
):
    """Bisect a jump bracket down to width refine_tol.

    Each step keeps the half across which the >= jump_threshold move
    persists (the lower half when both qualify: one dominant jump is
    assumed). Returns a Transition with the final bracket midpoint as the
    critical q, or a GradualDrift if the jump dissolves into smaller steps
    at finer resolution.
    """
    q_low, q_high = float(bracket[0]), float(bracket[1])
    if not 0.0 < q_low < q_high < 1.0:
        raise ValueError(f"bracket must satisfy 0 < q_low < q_high < 1, got {bracket}")
    below = optimize(d, m, q_low).thresholds
    above = optimize(d, m, q_high).thresholds
    if _max_jump(below, above) < jump_threshold:
        raise ValueError(
            f"bracket endpoints differ by {_max_jump(below, above)} < {jump_threshold}; "
            "nothing to refine"
        )
    while q_high - q_low > refine_tol:
        mid = 0.5 * (q_low + q_high)
        at_mid = optimize(d, m, mid).thresholds
        if _max_jump(below, at_mid) >= jump_threshold:
            q_high, above = mid, at_mid
        elif _max_jump(at_mid, above) >= jump_threshold:
            q_low, below = mid, at_mid
        else:
            return GradualDrift(q_low, q_high, below, above)
    jumps = tuple(abs(x - y) for x, y in zip(below.levels, above.levels))
    return Transition(q_low, q_high, 0.5 * (q_low + q_high), jumps, below, above)


def find_transitions(
    d: GrayDistribution, cfg: SweepConfig
) -> tuple[ThresholdCurve, TransitionReport]:
    """Sweep, detect jump brackets, and refine each: the full pipeline."""
    curve = sweep(d, cfg)
    transitions = []
    gradual = []
    for bracket in detect_transitions(curve, cfg.jump_threshold):
        outcome = refine_transition(d, cfg.m, bracket, cfg.jump_threshold, cfg.refine_tol)
        if isinstance(outcome, Transition):
            transitions.append(outcome)
        else:
            gradual.append(outcome)
    return curve, TransitionReport(tuple(transitions), tuple(gradual))


def curve_to_csv(curve: ThresholdCurve) -> str:
    """Render the curve as CSV: q,t1[,t2,...],entropy."""
    m = curve.class_count
    out = io.StringIO()
    cols = ",".join(f"t{j}" for j in range(1, m))
    out.write(f"q,{cols},entropy\n")
    for row in curve.rows:
        ts = ",".join(str(t) for t in row.thresholds.levels)
        out.write(f"{row.q:.6f},{ts},{row.entropy:.12g}\n")
    return out.getvalue()


def report_to_csv(report: TransitionReport) -> str:
    """Render refined transitions as CSV, threshold lists ';'-joined per cell."""
    out = io.StringIO()
    out.write("q_low,q_high,critical_q,max_jump,thresholds_below,thresholds_above\n")
    for tr in report.transitions:
        below = ";".join(str(t) for t in tr.below.levels)
        above = ";".join(str(t) for t in tr.above.levels)
        out.write(
            f"{tr.q_low:.6f},{tr.q_high:.6f},{tr.critical_q:.6f},"
            f"{tr.max_jump},{below},{above}\n"
        )
    return out.getvalue()
