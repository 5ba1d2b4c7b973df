"""Budgeted prior and constrained-prior sampling.

Every likelihood evaluation, including evaluations of candidates that end
up rejected, is charged against an :class:`EvalLedger`.  Randomness comes
exclusively from caller-supplied numpy Generators, so runs are reproducible
bit for bit from a seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BudgetExhausted",
    "EvalLedger",
    "StallDetected",
    "derive_seed",
    "draw_constrained",
    "draw_prior",
    "make_rng",
]


class BudgetExhausted(RuntimeError):
    """No likelihood evaluations left in the budget."""


class StallDetected(RuntimeError):
    """Constrained sampling rejected max_attempts candidates in a row."""

    def __init__(self, attempts):
        super().__init__(f"no candidate accepted after {attempts} attempts")
        self.attempts = attempts


@dataclass
class EvalLedger:
    """Counts likelihood evaluations against a hard budget."""

    budget: int
    used: int = 0

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be a positive integer")

    @property
    def remaining(self):
        return self.budget - self.used

    def charge(self):
        if self.used >= self.budget:
            raise BudgetExhausted(f"budget of {self.budget} evaluations exhausted")
        self.used += 1


def evaluate(model, point, ledger, rng=None, noise=0.0):
    """One budgeted likelihood evaluation.

    The raw value is bounds-checked against the model's declared likelihood
    bounds; with ``noise > 0`` an independent Unif[-noise, noise] perturbation
    is added afterwards (fresh randomness per evaluation).
    """
    ledger.charge()
    value = model.likelihood(point)
    lo, hi = model.likelihood_bounds
    if not lo <= value <= hi:
        raise ValueError(
            f"likelihood {value!r} outside declared bounds [{lo!r}, {hi!r}]"
        )
    if noise > 0.0:
        value += rng.uniform(-noise, noise)
    return value


def draw_prior(model, rng, ledger, noise=0.0):
    """Draw one prior sample and evaluate its likelihood (one budget unit)."""
    point = model.prior_sample(rng)
    return point, evaluate(model, point, ledger, rng, noise)


def draw_constrained(model, threshold, exclude_plateaus, rng, ledger, max_attempts, noise=0.0):
    """Rejection-sample the prior until the likelihood strictly exceeds ``threshold``.

    Every candidate costs one budget unit whether or not it is accepted.
    With ``exclude_plateaus`` candidates sitting exactly on a declared
    plateau level are rejected as well.  Raises :class:`StallDetected` after
    ``max_attempts`` consecutive rejections and :class:`BudgetExhausted`
    when the ledger runs dry mid-search.
    """
    if max_attempts < 1:
        raise ValueError("max_attempts must be at least 1")
    plateaus = model.declared_plateaus or ()
    for _ in range(max_attempts):
        point, value = draw_prior(model, rng, ledger, noise)
        if value > threshold and not (exclude_plateaus and value in plateaus):
            return point, value
    raise StallDetected(max_attempts)


def make_rng(seed):
    """Deterministic generator for a 64-bit seed."""
    return np.random.default_rng(seed)


_MASK64 = (1 << 64) - 1


def _mix64(z):
    # splitmix64 finalizer: cheap, well-dispersed, platform-independent.
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(base_seed, *parts):
    """Deterministically derive a child seed from a base seed and indices.

    Used to give every experiment grid cell and replicate its own stream;
    distinct index tuples yield distinct seeds in practice.
    """
    h = _mix64(base_seed & _MASK64)
    for part in parts:
        h = _mix64(h ^ ((part + 0x632BE59BD9B4E019) & _MASK64))
    return h
