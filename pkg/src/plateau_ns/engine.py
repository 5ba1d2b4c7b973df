"""Nested-sampling evidence estimators: vanilla, randomized, and split.

All three strategies share one accumulation loop.  Iteration k retires the
lowest-likelihood active sample, books the slice (X_{k-1} - X_k) * L with
the deterministic shrinkage X_k = X_0 * exp(-k / n), and refills the active
set by rejection sampling above the retired level.  They differ in how they
confront a likelihood plateau:

* vanilla ignores it and stalls once every active sample ties at the top;
* randomized perturbs every likelihood evaluation by Unif[-a, a] noise so
  ties never happen;
* split classifies the initial samples into plateau buckets and a regular
  remainder, books each plateau as level * estimated mass immediately, and
  runs the loop only on the regular part starting from its mass share.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .sampler import (
    BudgetExhausted,
    EvalLedger,
    StallDetected,
    draw_constrained,
    draw_prior,
    make_rng,
)

__all__ = [
    "DegeneratePartition",
    "NSResult",
    "PlateauPartition",
    "RunConfig",
    "TERM_BUDGET",
    "TERM_COLLAPSED",
    "TERM_STALL",
    "TraceRecord",
    "partition_initial",
    "posterior_summaries",
    "run_randomized",
    "run_split",
    "run_strategy",
    "run_vanilla",
    "summary_dict",
    "trace_csv",
]

TERM_BUDGET = "budget_exhausted"
TERM_STALL = "stall_detected"
TERM_COLLAPSED = "active_set_collapsed"

STRATEGIES = ("vanilla", "randomized", "split")


@dataclass(frozen=True)
class RunConfig:
    """Configuration of one nested-sampling run.

    The evaluation budget is ``budget_multiplier * n_active`` likelihood
    calls, counting the initial draws and every rejected candidate.
    ``max_attempts`` bounds consecutive rejections before a stall is
    declared; it defaults to ``10 * n_active``.
    """

    n_active: int
    budget_multiplier: float = 40.0
    seed: int = 0
    strategy: str = "vanilla"
    a: Optional[float] = None
    remainder_term: bool = True
    max_attempts: Optional[int] = None

    def __post_init__(self):
        if self.n_active < 1:
            raise ValueError("n_active must be a positive integer")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}")
        if self.strategy == "randomized":
            if self.a is None or self.a <= 0.0:
                raise ValueError("randomized strategy requires a perturbation width a > 0")
        if self.budget < self.n_active:
            raise ValueError("budget must cover at least the initial active set")
        if self.max_attempts is not None and self.max_attempts < 1:
            raise ValueError("max_attempts must be positive")

    @property
    def budget(self):
        return int(round(self.budget_multiplier * self.n_active))

    @property
    def attempts(self):
        return self.max_attempts if self.max_attempts is not None else 10 * self.n_active


@dataclass(frozen=True)
class TraceRecord:
    """One retirement: iteration, remaining-mass estimate, retired level,
    evidence accumulated so far, and ledger state when the sample died."""

    k: int
    x_k: float
    l_k: float
    z_partial: float
    evals_used: int


@dataclass(frozen=True)
class NSResult:
    """Outcome of one run.

    ``dead_points`` holds (point, likelihood, weight) triples in retirement
    order; ``mass_start`` is the initial accessible prior mass (1 for
    vanilla/randomized, the regular share for split) and ``z_head`` the
    plateau contribution booked before the loop started.
    """

    z: float
    log_z: float
    trace: tuple[TraceRecord, ...]
    dead_points: tuple[tuple[np.ndarray, float, float], ...]
    termination: str
    evals_used: int
    mass_start: float = 1.0
    z_head: float = 0.0


class DegeneratePartition(RuntimeError):
    """Every initial sample landed on a plateau; carries the partition."""

    def __init__(self, partition):
        super().__init__("all initial samples sit on plateau levels")
        self.partition = partition


@dataclass(frozen=True)
class PlateauPartition:
    """Initial samples split into plateau buckets and the regular remainder.

    Counts are kept as integers so the bookkeeping identity
    sum(counts) + len(regular) == m holds exactly.
    """

    m: int
    levels: tuple[float, ...]
    counts: tuple[int, ...]
    regular: tuple[tuple[np.ndarray, float], ...]

    @property
    def masses(self):
        return tuple(c / self.m for c in self.counts)

    @property
    def xi0(self):
        return (self.m - sum(self.counts)) / self.m

    @property
    def plateau_evidence(self):
        return float(sum(level * c / self.m for level, c in zip(self.levels, self.counts)))


def partition_initial(model, m, rng, ledger):
    """Draw m prior samples and sort them into plateau buckets.

    Membership is exact floating-point equality against the declared
    plateau levels.  If the model declares none (``declared_plateaus is
    None``), any value attained by at least two samples is flagged as a
    plateau level: under an atomless pushforward exact collisions have
    probability zero, so a collision is evidence of an atom.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    draws = [draw_prior(model, rng, ledger) for _ in range(m)]
    if model.declared_plateaus is None:
        counts: dict[float, int] = {}
        for _, value in draws:
            counts[value] = counts.get(value, 0) + 1
        levels = tuple(sorted(v for v, c in counts.items() if c >= 2))
    else:
        levels = tuple(model.declared_plateaus)
    bucket_counts = [0] * len(levels)
    regular = []
    for point, value in draws:
        try:
            bucket_counts[levels.index(value)] += 1
        except ValueError:
            regular.append((point, value))
    partition = PlateauPartition(
        m=m, levels=levels, counts=tuple(bucket_counts), regular=tuple(regular)
    )
    if not regular:
        raise DegeneratePartition(partition)
    return partition


def _accumulate(model, config, rng, ledger, points, values, mass_start, z_head,
                n_shrink, exclude_plateaus, noise):
    """The shared retire/book/refill loop."""
    l_arr = np.array(values, dtype=float)
    trace = []
    dead = []
    x_prev = mass_start
    x_k = mass_start
    z = z_head
    termination = TERM_BUDGET
    k = 0
    worst = -1
    while True:
        k += 1
        worst = int(np.argmin(l_arr))
        l_worst = float(l_arr[worst])
        x_k = mass_start * math.exp(-k / n_shrink)
        weight = (x_prev - x_k) * l_worst
        z += weight
        dead.append((points[worst], l_worst, weight))
        trace.append(TraceRecord(k, x_k, l_worst, z, ledger.used))
        try:
            point, value = draw_constrained(
                model, l_worst, exclude_plateaus, rng, ledger, config.attempts, noise
            )
        except BudgetExhausted:
            termination = TERM_BUDGET
            break
        except StallDetected:
            termination = TERM_STALL
            break
        points[worst] = point
        l_arr[worst] = value
        x_prev = x_k
    if config.remainder_term and len(l_arr) > 1:
        survivors = np.delete(l_arr, worst)
        z += x_k * float(np.mean(survivors))
    log_z = math.log(z) if z > 0.0 else float("-inf")
    return NSResult(
        z=z,
        log_z=log_z,
        trace=tuple(trace),
        dead_points=tuple(dead),
        termination=termination,
        evals_used=ledger.used,
        mass_start=mass_start,
        z_head=z_head,
    )


def run_vanilla(model, config, rng=None):
    """Plain nested sampling; likelihood plateaus will eventually stall it."""
    if config.strategy != "vanilla":
        raise ValueError("config.strategy must be 'vanilla'")
    return _run_flat(model, config, rng, noise=0.0)


def run_randomized(model, config, rng=None):
    """Nested sampling with every likelihood evaluation perturbed by
    Unif[-a, a] noise: initial draws, candidates, thresholds, and the
    evidence sum all use the perturbed values, with fresh noise per
    evaluation."""
    if config.strategy != "randomized":
        raise ValueError("config.strategy must be 'randomized'")
    return _run_flat(model, config, rng, noise=config.a)


def _run_flat(model, config, rng, noise):
    rng = make_rng(config.seed) if rng is None else rng
    ledger = EvalLedger(config.budget)
    points, values = [], []
    for _ in range(config.n_active):
        point, value = draw_prior(model, rng, ledger, noise)
        points.append(point)
        values.append(value)
    return _accumulate(
        model, config, rng, ledger, points, values,
        mass_start=1.0, z_head=0.0, n_shrink=config.n_active,
        exclude_plateaus=False, noise=noise,
    )


def run_split(model, config, rng=None):
    """Split strategy: book plateau levels at their estimated masses, then
    run nested sampling on the regular remainder only.

    The initial sample count equals ``n_active``; the regular survivors
    form the active set, the loop shrinks their mass share xi0 by
    exp(-1/n_regular) per iteration, and replacement sampling excludes the
    plateau levels.  If every sample lands on a plateau the run returns the
    plateau evidence alone with termination ``active_set_collapsed``.
    """
    if config.strategy != "split":
        raise ValueError("config.strategy must be 'split'")
    rng = make_rng(config.seed) if rng is None else rng
    ledger = EvalLedger(config.budget)
    try:
        partition = partition_initial(model, config.n_active, rng, ledger)
    except DegeneratePartition as exc:
        z = exc.partition.plateau_evidence
        return NSResult(
            z=z,
            log_z=math.log(z) if z > 0.0 else float("-inf"),
            trace=(),
            dead_points=(),
            termination=TERM_COLLAPSED,
            evals_used=ledger.used,
            mass_start=0.0,
            z_head=z,
        )
    points = [point for point, _ in partition.regular]
    values = [value for _, value in partition.regular]
    return _accumulate(
        model, config, rng, ledger, points, values,
        mass_start=partition.xi0, z_head=partition.plateau_evidence,
        n_shrink=len(values), exclude_plateaus=True, noise=0.0,
    )


_RUNNERS = {"vanilla": run_vanilla, "randomized": run_randomized, "split": run_split}


def run_strategy(model, config, rng=None):
    """Dispatch on ``config.strategy``."""
    return _RUNNERS[config.strategy](model, config, rng)


def posterior_summaries(result):
    """Importance-weighted posterior mean and per-coordinate variance from
    the dead points."""
    if not result.dead_points:
        raise ValueError("result has no dead points")
    points = np.array([p for p, _, _ in result.dead_points], dtype=float)
    weights = np.array([w for _, _, w in result.dead_points], dtype=float)
    total = weights.sum()
    if total <= 0.0:
        weights = np.ones_like(weights)
        total = weights.sum()
    mean = points.T @ weights / total
    var = ((points - mean) ** 2).T @ weights / total
    return mean, var


# ---------------------------------------------------------------------------
# Serialization

TRACE_HEADER = ("k", "X_k", "L_k", "Z_partial", "evals_used")


def trace_csv(result):
    """Trace as RFC-4180 CSV with full round-trip float precision."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(TRACE_HEADER)
    for rec in result.trace:
        writer.writerow([rec.k, repr(rec.x_k), repr(rec.l_k), repr(rec.z_partial), rec.evals_used])
    return buf.getvalue()


def summary_dict(result, config=None):
    out = {
        "z": result.z,
        "log_z": result.log_z,
        "z_head": result.z_head,
        "mass_start": result.mass_start,
        "termination": result.termination,
        "evals_used": result.evals_used,
        "iterations": len(result.trace),
        "dead_points": len(result.dead_points),
    }
    if config is not None:
        out["config"] = {
            "strategy": config.strategy,
            "n_active": config.n_active,
            "budget_multiplier": config.budget_multiplier,
            "budget": config.budget,
            "seed": config.seed,
            "a": config.a,
            "remainder_term": config.remainder_term,
            "max_attempts": config.attempts,
        }
    return out


def summary_json(result, config=None):
    return json.dumps(summary_dict(result, config), sort_keys=True, indent=2) + "\n"
