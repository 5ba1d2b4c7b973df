"""Sampling problems for the evidence estimators.

A :class:`Model` bundles a prior sampler with a bounded likelihood and the
metadata the estimators need: known plateau levels, likelihood bounds, and
(where available) the exact survival function and pushforward law.  The two
builders provided here cover everything used by the tests and experiments:
the capped-Gaussian 5D reference model and arbitrary 1D piecewise problems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.special import gammainc

from . import measures
from .measures import PiecewiseProblem, PushforwardLaw

__all__ = [
    "Model",
    "REFERENCE_PLATEAU",
    "build_piecewise_1d",
    "build_reference_5d",
    "reference_plateau_mass",
]

# Plateau level of the 5D reference likelihood min(1 + exp(-|x|^2/2), cap).
REFERENCE_PLATEAU = 1.01


@dataclass(frozen=True)
class Model:
    """A sampling problem: prior sampler plus bounded likelihood.

    ``prior_sample`` draws one point given a numpy Generator; ``likelihood``
    maps a point (1D ndarray of length ``dim``) to a float within
    ``likelihood_bounds``.  ``declared_plateaus`` lists known plateau levels
    in increasing order; ``None`` means "unknown, detect from samples",
    while an empty tuple asserts there are none.  Both callables must be
    pure, so models are safe to share across concurrent runs.
    """

    dim: int
    prior_sample: Callable[[np.random.Generator], np.ndarray]
    likelihood: Callable[[np.ndarray], float]
    likelihood_bounds: tuple[float, float]
    declared_plateaus: Optional[tuple[float, ...]] = ()
    analytic_survival: Optional[Callable[[float], float]] = None
    pushforward_law: Optional[PushforwardLaw] = None
    problem: Optional[PiecewiseProblem] = None
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be a positive integer")
        lo, hi = self.likelihood_bounds
        if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
            raise ValueError("likelihood_bounds must be finite with lo <= hi")
        if self.declared_plateaus is not None:
            levels = self.declared_plateaus
            if any(b <= a for a, b in zip(levels, levels[1:])):
                raise ValueError("declared_plateaus must be strictly increasing")
            if levels and (levels[0] < lo or levels[-1] > hi):
                raise ValueError("declared_plateaus must lie within likelihood_bounds")


def reference_plateau_mass():
    """Prior mass of the 5D reference plateau, via the chi^2_5 radial CDF."""
    return float(gammainc(2.5, math.log(100.0) / 4.0))


def build_reference_5d():
    """The 5D benchmark: prior N(0, 4 I_5), likelihood min(1 + e^{-|x|^2/2}, 1.01).

    The cap is applied with ``min`` against a constant, so plateau membership
    is exact in floating point.  The survival function follows from the
    radial reduction |x|^2 / 4 ~ chi^2_5.
    """
    cap = REFERENCE_PLATEAU

    def likelihood(x):
        return min(1.0 + math.exp(-0.5 * float(x @ x)), cap)

    def prior_sample(rng):
        return rng.normal(0.0, 2.0, size=5)

    def analytic_survival(lam):
        if lam >= cap:
            return 0.0
        if lam <= 1.0:
            return 1.0
        return float(gammainc(2.5, -0.25 * math.log(lam - 1.0)))

    law = PushforwardLaw(atoms=((0.0, reference_plateau_mass()),))
    return Model(
        dim=5,
        prior_sample=prior_sample,
        likelihood=likelihood,
        likelihood_bounds=(1.0, cap),
        declared_plateaus=(cap,),
        analytic_survival=analytic_survival,
        pushforward_law=law,
        name="ref5d",
    )


def build_piecewise_1d(problem):
    """Wrap a 1D piecewise problem (or its JSON spec) as a Model.

    Prior sampling goes through the inverse CDF, the declared plateau levels
    are the problem's atom levels, and the exact strict survival function is
    wired in as ``analytic_survival``.
    """
    if isinstance(problem, dict):
        problem = measures.problem_from_spec(problem)
    elif isinstance(problem, (str, bytes)) or hasattr(problem, "__fspath__"):
        problem = measures.load_problem(problem)

    atoms = measures.atoms(problem)

    def prior_sample(rng, _problem=problem):
        return np.array([_problem.prior.ppf(rng.random())])

    def likelihood(x, _problem=problem):
        return _problem.likelihood(float(x[0]))

    def analytic_survival(lam, _problem=problem):
        return measures.survival_open(_problem, lam)

    return Model(
        dim=1,
        prior_sample=prior_sample,
        likelihood=likelihood,
        likelihood_bounds=(problem.inf_likelihood, problem.sup_likelihood),
        declared_plateaus=tuple(a.level for a in atoms),
        analytic_survival=analytic_survival,
        pushforward_law=measures.pushforward_law(problem),
        problem=problem,
        name=problem.name,
    )
