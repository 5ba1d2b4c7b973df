"""Built-in 1D test problems.

The catalog covers all four boundary-atom classes (0, A, B, AB), problems
with zero, one, and several plateaus, both prior kinds, and one problem
whose domain overhangs the prior support so the mass/level round trip fails
on a null set.  Breakpoints and levels are dyadic wherever an atom is
involved, so the closed-form survival arithmetic is exact in floating point.
"""

from __future__ import annotations

from .measures import (
    ConstantSegment,
    GaussianSegment,
    LinearSegment,
    PiecewiseProblem,
    TruncatedGaussianPrior,
    UniformPrior,
)
from .model import build_piecewise_1d, build_reference_5d

__all__ = ["catalog", "builtin_model", "builtin_problem"]


def _unit(segments, name):
    return PiecewiseProblem(
        domain=(0.0, 1.0),
        prior=UniformPrior(0.0, 1.0),
        segments=tuple(segments),
        name=name,
    )


def _identity():
    # Strictly increasing, no atoms: class 0, uniform pushforward.
    return _unit([LinearSegment(0.0, 1.0, 0.0, 1.0)], "identity")


def _decreasing():
    return _unit([LinearSegment(0.0, 1.0, 1.0, 0.0)], "decreasing")


def _cap_half():
    # L(x) = min(x, 0.5): top plateau, class B.
    return _unit(
        [LinearSegment(0.0, 0.5, 0.0, 0.5), ConstantSegment(0.5, 1.0, 0.5)],
        "cap_half",
    )


def _floor_quarter():
    # L(x) = max(x, 0.25): bottom plateau, class A.
    return _unit(
        [ConstantSegment(0.0, 0.25, 0.25), LinearSegment(0.25, 1.0, 0.25, 1.0)],
        "floor_quarter",
    )


def _band():
    # Plateaus at both the infimum and the supremum: class AB.
    return _unit(
        [
            ConstantSegment(0.0, 0.25, 0.25),
            LinearSegment(0.25, 0.75, 0.25, 0.75),
            ConstantSegment(0.75, 1.0, 0.75),
        ],
        "band",
    )


def _constant():
    # Totally flat likelihood: the single atom is both infimum and supremum.
    return _unit([ConstantSegment(0.0, 1.0, 0.6875)], "constant")


def _middle_plateau():
    # One interior plateau, strictly inside (inf L, sup L): class 0 with an atom.
    return _unit(
        [
            LinearSegment(0.0, 0.25, 0.0, 0.25),
            ConstantSegment(0.25, 0.5, 0.25),
            LinearSegment(0.5, 1.0, 0.25, 1.0),
        ],
        "middle_plateau",
    )


def _two_plateaus():
    return _unit(
        [
            LinearSegment(0.0, 0.125, 0.0, 0.25),
            ConstantSegment(0.125, 0.375, 0.25),
            LinearSegment(0.375, 0.5, 0.25, 0.5),
            ConstantSegment(0.5, 0.75, 0.5),
            LinearSegment(0.75, 1.0, 0.5, 1.0),
        ],
        "two_plateaus",
    )


def _gauss_capped():
    # Gaussian flank capped by a top plateau of mass 1/2: class B.
    return _unit(
        [
            GaussianSegment(0.0, 0.5, center=0.5, height=0.8, width=0.4),
            ConstantSegment(0.5, 1.0, 0.8),
        ],
        "gauss_capped",
    )


def _gauss_peak():
    # Smooth bump under a truncated-Gaussian prior; both flanks cover the
    # same likelihood band, exercising the bisection inverse.
    return PiecewiseProblem(
        domain=(-2.0, 2.0),
        prior=TruncatedGaussianPrior(mean=0.0, sd=1.0, lo=-2.0, hi=2.0),
        segments=(
            GaussianSegment(-2.0, 0.0, center=0.0, height=0.9, width=1.0, offset=0.05),
            GaussianSegment(0.0, 2.0, center=0.0, height=0.9, width=1.0, offset=0.05),
        ),
        name="gauss_peak",
    )


def _zero_mass_tail():
    # Domain [0, 2] but prior support [0, 1]: likelihood values in (1, 2]
    # are attained only on a null set, so the mass/level round trip fails
    # exactly there.
    return PiecewiseProblem(
        domain=(0.0, 2.0),
        prior=UniformPrior(0.0, 1.0),
        segments=(LinearSegment(0.0, 2.0, 0.0, 2.0),),
        name="zero_mass_tail",
    )


_BUILDERS = {
    "identity": _identity,
    "decreasing": _decreasing,
    "cap_half": _cap_half,
    "floor_quarter": _floor_quarter,
    "band": _band,
    "constant": _constant,
    "middle_plateau": _middle_plateau,
    "two_plateaus": _two_plateaus,
    "gauss_capped": _gauss_capped,
    "gauss_peak": _gauss_peak,
    "zero_mass_tail": _zero_mass_tail,
}

# Expected boundary-atom class per catalog problem.
ATOM_CLASSES = {
    "identity": "0",
    "decreasing": "0",
    "cap_half": "B",
    "floor_quarter": "A",
    "band": "AB",
    "constant": "AB",
    "middle_plateau": "0",
    "two_plateaus": "0",
    "gauss_capped": "B",
    "gauss_peak": "0",
    "zero_mass_tail": "0",
}

# Problems whose breakpoints and prior are dyadic-exact in floating point.
DYADIC = (
    "identity",
    "decreasing",
    "cap_half",
    "floor_quarter",
    "band",
    "constant",
    "middle_plateau",
    "two_plateaus",
    "zero_mass_tail",
)


def catalog():
    """All built-in problems, keyed by name."""
    return {name: build() for name, build in _BUILDERS.items()}


def builtin_problem(name):
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(
            f"unknown problem {name!r}; available: {', '.join(sorted(_BUILDERS))}"
        ) from None


def builtin_model(name):
    """A Model by name: 'ref5d' or any catalog problem."""
    if name == "ref5d":
        return build_reference_5d()
    return build_piecewise_1d(builtin_problem(name))
