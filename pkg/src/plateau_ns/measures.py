"""Exact measure computations for 1D piecewise likelihood problems.

A :class:`PiecewiseProblem` bundles a 1D prior with a likelihood that is
piecewise monotone or constant.  For such problems the survival functions

* ``survival_closed(r)``  -- prior mass of the closed super-level set {L >= r},
* ``survival_open(lam)``  -- prior mass of the strict super-level set {L > lam},

their generalized inverses, the atom decomposition of the likelihood
pushforward, and the evidence integral can all be computed segment by
segment in closed form (with a bisection fallback where several segments
overlap in likelihood value).  This is the machinery used to verify the
evidence reparametrization on the unit interval numerically.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from scipy.special import ndtr, ndtri

__all__ = [
    "Atom",
    "ConstantSegment",
    "DefectInterval",
    "GaussianSegment",
    "LinearSegment",
    "PiecewiseProblem",
    "PushforwardLaw",
    "QuadratureError",
    "SpecError",
    "TruncatedGaussianPrior",
    "UniformPrior",
    "atoms",
    "boundary_atom_class",
    "evidence_both_ways",
    "inverse_defect_set",
    "level_at_mass",
    "load_problem",
    "prior_expectation",
    "problem_from_spec",
    "pushforward_law",
    "survival_closed",
    "survival_inverse",
    "survival_open",
]

# Bisection fallback resolves level coordinates to this absolute width.
BISECTION_WIDTH = 1e-14


class SpecError(ValueError):
    """Raised for malformed piecewise problem specifications."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature exceeded its subdivision limit."""


# ---------------------------------------------------------------------------
# Priors


@dataclass(frozen=True)
class UniformPrior:
    """Uniform prior on [lo, hi]."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise SpecError("uniform prior bounds must be finite")
        if not self.hi > self.lo:
            raise SpecError("uniform prior needs hi > lo")

    def cdf(self, x):
        if x <= self.lo:
            return 0.0
        if x >= self.hi:
            return 1.0
        return (x - self.lo) / (self.hi - self.lo)

    def ppf(self, u):
        if u <= 0.0:
            return self.lo
        if u >= 1.0:
            return self.hi
        return self.lo + u * (self.hi - self.lo)


@dataclass(frozen=True)
class TruncatedGaussianPrior:
    """Gaussian N(mean, sd^2) truncated and renormalized to [lo, hi]."""

    mean: float
    sd: float
    lo: float
    hi: float

    def __post_init__(self):
        if self.sd <= 0.0:
            raise SpecError("truncated gaussian needs sd > 0")
        if not self.hi > self.lo:
            raise SpecError("truncated gaussian needs hi > lo")

    def _edges(self):
        a = float(ndtr((self.lo - self.mean) / self.sd))
        b = float(ndtr((self.hi - self.mean) / self.sd))
        return a, b

    def cdf(self, x):
        if x <= self.lo:
            return 0.0
        if x >= self.hi:
            return 1.0
        a, b = self._edges()
        u = (float(ndtr((x - self.mean) / self.sd)) - a) / (b - a)
        return min(1.0, max(0.0, u))

    def ppf(self, u):
        if u <= 0.0:
            return self.lo
        if u >= 1.0:
            return self.hi
        a, b = self._edges()
        x = self.mean + self.sd * float(ndtri(a + u * (b - a)))
        return min(self.hi, max(self.lo, x))


Prior = Union[UniformPrior, TruncatedGaussianPrior]


# ---------------------------------------------------------------------------
# Likelihood segments


@dataclass(frozen=True)
class LinearSegment:
    """Affine likelihood piece on [x0, x1] running from y0 to y1 (y0 != y1)."""

    x0: float
    x1: float
    y0: float
    y1: float

    is_constant = False

    def __post_init__(self):
        if not self.x1 > self.x0:
            raise SpecError("segment needs x1 > x0")
        if self.y0 == self.y1:
            raise SpecError("linear segment must be strictly monotone; use a constant segment")

    @property
    def increasing(self):
        return self.y1 > self.y0

    @property
    def value_min(self):
        return min(self.y0, self.y1)

    @property
    def value_max(self):
        return max(self.y0, self.y1)

    def value(self, x):
        # Endpoint short-circuits keep breakpoint values bit-exact.
        if x == self.x0:
            return self.y0
        if x == self.x1:
            return self.y1
        return self.y0 + (self.y1 - self.y0) * ((x - self.x0) / (self.x1 - self.x0))

    def inverse(self, y):
        if y == self.y0:
            return self.x0
        if y == self.y1:
            return self.x1
        return self.x0 + (y - self.y0) * ((self.x1 - self.x0) / (self.y1 - self.y0))


@dataclass(frozen=True)
class ConstantSegment:
    """Flat likelihood piece; its level set is a candidate atom."""

    x0: float
    x1: float
    level: float

    is_constant = True

    def __post_init__(self):
        if not self.x1 > self.x0:
            raise SpecError("segment needs x1 > x0")

    @property
    def value_min(self):
        return self.level

    @property
    def value_max(self):
        return self.level

    def value(self, x):
        return self.level


@dataclass(frozen=True)
class GaussianSegment:
    """One flank of a Gaussian bump: offset + height * exp(-(x-center)^2 / (2 width^2)).

    The segment must lie entirely on one side of the center so the piece is
    strictly monotone.
    """

    x0: float
    x1: float
    center: float
    height: float
    width: float
    offset: float = 0.0

    is_constant = False

    def __post_init__(self):
        if not self.x1 > self.x0:
            raise SpecError("segment needs x1 > x0")
        if self.width <= 0.0 or self.height <= 0.0:
            raise SpecError("gaussian segment needs width > 0 and height > 0")
        if not (self.x1 <= self.center or self.x0 >= self.center):
            raise SpecError("gaussian segment must not straddle its center")

    @property
    def increasing(self):
        return self.x1 <= self.center

    @property
    def value_min(self):
        return min(self.value(self.x0), self.value(self.x1))

    @property
    def value_max(self):
        return max(self.value(self.x0), self.value(self.x1))

    def value(self, x):
        z = (x - self.center) / self.width
        return self.offset + self.height * math.exp(-0.5 * z * z)

    def inverse(self, y):
        if y == self.value(self.x0):
            return self.x0
        if y == self.value(self.x1):
            return self.x1
        t = (y - self.offset) / self.height
        d = self.width * math.sqrt(-2.0 * math.log(t))
        return self.center - d if self.increasing else self.center + d


Segment = Union[LinearSegment, ConstantSegment, GaussianSegment]


# ---------------------------------------------------------------------------
# Problems


@dataclass(frozen=True)
class PiecewiseProblem:
    """A 1D prior plus a piecewise monotone-or-constant likelihood on [a, b].

    Segments must partition the domain contiguously.  The prior support may
    be a strict subset of the domain; likelihood values attained only outside
    the support then carry zero prior mass.
    """

    domain: tuple[float, float]
    prior: Prior
    segments: tuple[Segment, ...]
    name: str = ""

    def __post_init__(self):
        a, b = self.domain
        if not (math.isfinite(a) and math.isfinite(b) and b > a):
            raise SpecError("domain must be a finite interval [a, b] with b > a")
        if not self.segments:
            raise SpecError("at least one segment required")
        if self.segments[0].x0 != a or self.segments[-1].x1 != b:
            raise SpecError("segments must start and end at the domain bounds")
        for left, right in zip(self.segments, self.segments[1:]):
            if left.x1 != right.x0:
                raise SpecError(
                    f"segments must be contiguous; gap or overlap at x={left.x1!r}"
                )
        if self.prior.lo < a or self.prior.hi > b:
            raise SpecError("prior support must lie within the domain")

    @property
    def inf_likelihood(self):
        return min(seg.value_min for seg in self.segments)

    @property
    def sup_likelihood(self):
        return max(seg.value_max for seg in self.segments)

    @property
    def breakpoints(self):
        return tuple(seg.x0 for seg in self.segments) + (self.segments[-1].x1,)

    def likelihood(self, x):
        """Evaluate the likelihood; shared breakpoints use the right segment."""
        a, b = self.domain
        if not a <= x <= b:
            raise ValueError(f"x={x!r} outside domain {self.domain}")
        idx = bisect_right(self.breakpoints, x) - 1
        idx = min(max(idx, 0), len(self.segments) - 1)
        return self.segments[idx].value(x)


@dataclass(frozen=True)
class Atom:
    """One discrete component of the likelihood pushforward.

    ``level`` is the likelihood value, ``tail_mass`` the prior mass strictly
    above it, and ``jump`` the prior mass of the level set itself.
    """

    level: float
    tail_mass: float
    jump: float


def _seg_mass(problem, seg):
    cdf = problem.prior.cdf
    return cdf(seg.x1) - cdf(seg.x0)


def _seg_tail_mass(problem, seg, level, strict):
    """Prior mass of {x in seg : L(x) > level} (strict) or {L(x) >= level}."""
    cdf = problem.prior.cdf
    if seg.is_constant:
        keep = seg.level > level if strict else seg.level >= level
        return _seg_mass(problem, seg) if keep else 0.0
    vmin, vmax = seg.value_min, seg.value_max
    if strict:
        if level < vmin:
            return _seg_mass(problem, seg)
        if level >= vmax:
            return 0.0
    else:
        if level <= vmin:
            return _seg_mass(problem, seg)
        if level > vmax:
            return 0.0
    xr = seg.inverse(level)
    if seg.increasing:
        return cdf(seg.x1) - cdf(xr)
    return cdf(xr) - cdf(seg.x0)


def survival_closed(problem, level):
    """psi(r): prior mass of the closed super-level set {L >= r}.

    Non-increasing and left-continuous; at an atom level it includes the
    atom's jump.
    """
    return sum(_seg_tail_mass(problem, seg, level, strict=False) for seg in problem.segments)


def survival_open(problem, level):
    """X(lambda): prior mass of the strict super-level set {L > lambda}.

    The right-continuous companion of :func:`survival_closed`; vanishes at
    the likelihood supremum.
    """
    return sum(_seg_tail_mass(problem, seg, level, strict=True) for seg in problem.segments)


@lru_cache(maxsize=None)
def atoms(problem):
    """All likelihood levels carrying positive prior mass, sorted by level.

    Only constant segments can contribute; segments sharing a level are
    merged into a single atom.
    """
    masses: dict[float, float] = {}
    for seg in problem.segments:
        if seg.is_constant:
            m = _seg_mass(problem, seg)
            if m > 0.0:
                masses[seg.level] = masses.get(seg.level, 0.0) + m
    return tuple(
        Atom(level=lvl, tail_mass=survival_open(problem, lvl), jump=masses[lvl])
        for lvl in sorted(masses)
    )


@lru_cache(maxsize=None)
def _critical_levels(problem):
    """Likelihood values at which any survival function can kink or jump.

    Segment endpoint values plus the likelihood at the edges of the prior
    support (prior density switches on/off there).  Between consecutive
    critical levels both survival functions are either strictly monotone or
    constant.
    """
    vals = set()
    for seg in problem.segments:
        vals.add(seg.value_min)
        vals.add(seg.value_max)
    a, b = problem.domain
    for edge in (problem.prior.lo, problem.prior.hi):
        if a < edge < b:
            vals.add(problem.likelihood(edge))
    return tuple(sorted(vals))


@lru_cache(maxsize=None)
def _critical_survivals(problem):
    return tuple(survival_closed(problem, v) for v in _critical_levels(problem))


def _active_segments(problem, lo_level, hi_level):
    """Monotone segments whose mass actually varies across a level band."""
    out = []
    for seg in problem.segments:
        if seg.is_constant:
            continue
        if seg.value_min <= lo_level and seg.value_max >= hi_level:
            lo_mass = _seg_tail_mass(problem, seg, lo_level, strict=False)
            hi_mass = _seg_tail_mass(problem, seg, hi_level, strict=False)
            if lo_mass > hi_mass:
                out.append(seg)
    return out


def _invert_on_segment(problem, seg, alpha, hi_level):
    """Solve psi(r) = alpha when a single segment varies across the band."""
    cdf = problem.prior.cdf
    ppf = problem.prior.ppf
    base = survival_closed(problem, hi_level) - _seg_tail_mass(
        problem, seg, hi_level, strict=False
    )
    target = alpha - base
    if seg.increasing:
        u = cdf(seg.x1) - target
    else:
        u = cdf(seg.x0) + target
    xr = ppf(min(1.0, max(0.0, u)))
    xr = min(seg.x1, max(seg.x0, xr))
    return seg.value(xr)


def _bisect_level(problem, alpha, lo_level, hi_level):
    lo, hi = lo_level, hi_level
    for _ in range(200):
        if hi - lo <= BISECTION_WIDTH:
            break
        mid = 0.5 * (lo + hi)
        if survival_closed(problem, mid) <= alpha:
            hi = mid
        else:
            lo = mid
    return hi


def survival_inverse(problem, alpha):
    """Generalized inverse of the closed survival function.

    Returns the smallest level r in [inf L, sup L] with psi(r) <= alpha.
    Inside an atom's half-open mass interval [tail, tail + jump) the answer
    is the atom level itself; elsewhere psi(result) = alpha.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha={alpha!r} outside [0, 1]")
    for atom in atoms(problem):
        if atom.tail_mass <= alpha < atom.tail_mass + atom.jump:
            return atom.level
    levels = _critical_levels(problem)
    psis = _critical_survivals(problem)
    if psis[0] <= alpha:
        return levels[0]
    j = next(i for i in range(1, len(levels)) if psis[i] <= alpha)
    lo_level, hi_level = levels[j - 1], levels[j]
    active = _active_segments(problem, lo_level, hi_level)
    if len(active) == 1:
        r = _invert_on_segment(problem, active[0], alpha, hi_level)
        return min(hi_level, max(lo_level, r))
    return _bisect_level(problem, alpha, lo_level, hi_level)


def level_at_mass(problem, xi):
    """Likelihood level as a function of the prior-mass coordinate on [0, 1].

    This is the generalized inverse of the strict survival function, i.e.
    sup{lambda attained : X(lambda) > xi}.  It coincides with
    :func:`survival_inverse`, which is how it is computed.
    """
    return survival_inverse(problem, xi)


# ---------------------------------------------------------------------------
# Pushforward law


@dataclass(frozen=True)
class PushforwardLaw:
    """Law of the mass coordinate X(L(x)) for x drawn from the prior.

    A mixture of point masses ``mass_i`` at ``location_i`` and a uniform
    density on the complement of the blocked intervals
    [location_i, location_i + mass_i] within [0, 1].
    """

    atoms: tuple[tuple[float, float], ...]  # (location, mass), sorted by location

    def __post_init__(self):
        prev_end = 0.0
        for loc, mass in self.atoms:
            if mass <= 0.0:
                raise ValueError("atom masses must be positive")
            if loc < prev_end - 1e-12 or loc + mass > 1.0 + 1e-12:
                raise ValueError("atom intervals must be disjoint and inside [0, 1]")
            prev_end = loc + mass

    @property
    def uniform_support(self):
        """Complement of the blocked intervals, as a tuple of (lo, hi) pairs."""
        out = []
        cursor = 0.0
        for loc, mass in self.atoms:
            if loc > cursor:
                out.append((cursor, loc))
            cursor = max(cursor, loc + mass)
        if cursor < 1.0:
            out.append((cursor, 1.0))
        return tuple(out)

    @property
    def uniform_mass(self):
        return 1.0 - sum(m for _, m in self.atoms)

    def cdf(self, alpha, side="right"):
        """Mixed CDF; ``side='left'`` evaluates the left limit at jumps."""
        for loc, mass in self.atoms:
            if side == "right":
                if loc <= alpha < loc + mass:
                    return loc + mass
            else:
                if loc < alpha <= loc + mass:
                    return loc + mass
        return min(1.0, max(0.0, alpha))

    def sample(self, rng, size):
        """Draw ``size`` values; blocked intervals collapse onto their atom."""
        u = rng.random(size)
        out = u.copy()
        for loc, mass in self.atoms:
            out[(u >= loc) & (u < loc + mass)] = loc
        return out


def pushforward_law(problem):
    """Assemble the mixed law of the mass coordinate from the atom list."""
    pairs = sorted((a.tail_mass, a.jump) for a in atoms(problem))
    return PushforwardLaw(atoms=tuple(pairs))


def boundary_atom_class(problem):
    """Classify boundary atoms: A if the lowest atom sits at inf L, B if the
    highest atom sits at sup L, AB for both, 0 otherwise (or no atoms)."""
    ats = atoms(problem)
    if not ats:
        return "0"
    low = ats[0].level == problem.inf_likelihood
    high = ats[-1].level == problem.sup_likelihood
    if low and high:
        return "AB"
    if low:
        return "A"
    if high:
        return "B"
    return "0"


# ---------------------------------------------------------------------------
# Quadrature


def _adaptive_simpson(f, a, b, tol, max_depth=48):
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _simpson_step(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    if depth <= 0:
        raise QuadratureError(f"subdivision limit reached on [{a}, {b}]")
    return _simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + _simpson_step(
        f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1
    )


def prior_expectation(problem, tol=1e-10):
    """Integral of the likelihood against the prior, segment by segment.

    Each segment is integrated in the prior-mass coordinate u = cdf(x), so
    the measure is handled exactly and only the composed likelihood is
    quadratured.  Constant segments contribute level * mass exactly.
    """
    cdf = problem.prior.cdf
    ppf = problem.prior.ppf
    total = 0.0
    for seg in problem.segments:
        u0, u1 = cdf(seg.x0), cdf(seg.x1)
        if u1 <= u0:
            continue
        if seg.is_constant:
            total += seg.level * (u1 - u0)
            continue

        def f(u, seg=seg):
            x = min(seg.x1, max(seg.x0, ppf(u)))
            return seg.value(x)

        total += _adaptive_simpson(f, u0, u1, tol)
    return total


def evidence_both_ways(problem, grid_size=2000, tol=1e-10):
    """Both sides of the evidence identity: the likelihood integral against
    the prior, and the integral of :func:`level_at_mass` over [0, 1].

    The unit-interval integral forces breakpoints at every atom interval
    endpoint and at every survival value of a critical level, so each smooth
    piece is quadratured separately and atom intervals (where the integrand
    is constant) are summed exactly.
    """
    if grid_size < 1000:
        raise ValueError("grid_size must be at least 1000")
    lhs = prior_expectation(problem, tol)

    ats = atoms(problem)
    cuts = {0.0, 1.0}
    for a in ats:
        cuts.add(a.tail_mass)
        cuts.add(min(1.0, a.tail_mass + a.jump))
    for v in _critical_levels(problem):
        cuts.add(survival_open(problem, v))
        cuts.add(survival_closed(problem, v))
    edges = sorted(cuts)

    rhs = 0.0
    for b0, b1 in zip(edges, edges[1:]):
        if b1 <= b0:
            continue
        covering = next(
            (a for a in ats if a.tail_mass <= b0 and b1 <= a.tail_mass + a.jump), None
        )
        if covering is not None:
            rhs += covering.level * (b1 - b0)
            continue
        pieces = max(1, int(round((b1 - b0) * grid_size)))
        step = (b1 - b0) / pieces
        for i in range(pieces):
            lo = b0 + i * step
            hi = b1 if i == pieces - 1 else b0 + (i + 1) * step
            rhs += _adaptive_simpson(lambda xi: level_at_mass(problem, xi), lo, hi, tol / pieces)
    return lhs, rhs


# ---------------------------------------------------------------------------
# Defects of the mass/level round trip


@dataclass(frozen=True)
class DefectInterval:
    """An x-interval on which level_at_mass(X(L(x))) < L(x).

    Such intervals arise where a zero-mass gap in attained likelihood values
    sits directly below L(x); they always carry zero prior mass.
    """

    x_lo: float
    x_hi: float
    mass: float


def inverse_defect_set(problem):
    """All x-intervals where the mass/level round trip loses the level.

    Works on the maximal flat stretches of the strict survival function: a
    value v attained inside a flat stretch fails the round trip whenever a
    strictly smaller value is attained in the same stretch.
    """
    levels = _critical_levels(problem)
    surv = [survival_open(problem, v) for v in levels]

    flats = []
    i = 0
    while i < len(levels) - 1:
        if surv[i] == surv[i + 1]:
            j = i + 1
            while j < len(levels) - 1 and surv[j] == surv[j + 1]:
                j += 1
            flats.append((levels[i], levels[j]))
            i = j
        else:
            i += 1

    cdf = problem.prior.cdf
    out = []
    for lo_v, hi_v in flats:
        attained_min = None
        for seg in problem.segments:
            smin, smax = seg.value_min, seg.value_max
            if smax < lo_v or smin > hi_v:
                continue
            piece_lo = max(smin, lo_v)
            if attained_min is None or piece_lo < attained_min:
                attained_min = piece_lo
        if attained_min is None or attained_min >= hi_v:
            continue
        for seg in problem.segments:
            v_lo = max(seg.value_min, attained_min)
            v_hi = min(seg.value_max, hi_v)
            if v_hi <= v_lo and not (seg.is_constant and attained_min < seg.value_min <= hi_v):
                continue
            if seg.is_constant:
                if attained_min < seg.level <= hi_v:
                    out.append(
                        DefectInterval(seg.x0, seg.x1, cdf(seg.x1) - cdf(seg.x0))
                    )
                continue
            xa = seg.inverse(v_lo)
            xb = seg.inverse(v_hi)
            x_lo, x_hi = (xa, xb) if xa <= xb else (xb, xa)
            if x_hi > x_lo:
                out.append(DefectInterval(x_lo, x_hi, abs(cdf(x_hi) - cdf(x_lo))))
    return tuple(sorted(out, key=lambda d: (d.x_lo, d.x_hi)))


# ---------------------------------------------------------------------------
# JSON problem specifications


def problem_from_spec(spec):
    """Build a :class:`PiecewiseProblem` from a parsed JSON document.

    Expected shape::

        {"domain": [a, b],
         "prior": {"kind": "uniform", "lo": ..., "hi": ...},
         "segments": [{"from": ..., "to": ..., "kind": "linear", "y0": ..., "y1": ...},
                      {"from": ..., "to": ..., "kind": "constant", "level": ...},
                      {"from": ..., "to": ..., "kind": "gaussian_bump",
                       "center": ..., "height": ..., "width": ..., "offset": ...}],
         "name": "optional"}

    Prior bounds default to the domain.  ``truncated_gaussian`` priors take
    ``mean`` and ``sd`` in addition to ``lo``/``hi``.
    """
    try:
        a, b = (float(v) for v in spec["domain"])
        prior_spec = dict(spec["prior"])
        seg_specs = spec["segments"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"malformed problem spec: {exc}") from exc

    kind = prior_spec.pop("kind", None)
    lo = float(prior_spec.pop("lo", a))
    hi = float(prior_spec.pop("hi", b))
    if kind == "uniform":
        prior = UniformPrior(lo=lo, hi=hi)
    elif kind == "truncated_gaussian":
        try:
            prior = TruncatedGaussianPrior(
                mean=float(prior_spec.pop("mean")),
                sd=float(prior_spec.pop("sd")),
                lo=lo,
                hi=hi,
            )
        except KeyError as exc:
            raise SpecError(f"truncated_gaussian prior missing {exc}") from exc
    else:
        raise SpecError(f"unknown prior kind {kind!r}")
    if prior_spec:
        raise SpecError(f"unused prior parameters {sorted(prior_spec)}")

    segments = []
    for raw in seg_specs:
        try:
            x0, x1 = float(raw["from"]), float(raw["to"])
            seg_kind = raw["kind"]
            if seg_kind == "linear":
                segments.append(
                    LinearSegment(x0, x1, float(raw["y0"]), float(raw["y1"]))
                )
            elif seg_kind == "constant":
                segments.append(ConstantSegment(x0, x1, float(raw["level"])))
            elif seg_kind == "gaussian_bump":
                segments.append(
                    GaussianSegment(
                        x0,
                        x1,
                        center=float(raw["center"]),
                        height=float(raw["height"]),
                        width=float(raw["width"]),
                        offset=float(raw.get("offset", 0.0)),
                    )
                )
            else:
                raise SpecError(f"unknown segment kind {seg_kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, SpecError):
                raise
            raise SpecError(f"malformed segment {raw!r}: {exc}") from exc

    return PiecewiseProblem(
        domain=(a, b),
        prior=prior,
        segments=tuple(segments),
        name=str(spec.get("name", "")),
    )


def load_problem(path):
    """Load a problem specification from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        return problem_from_spec(json.load(fh))
