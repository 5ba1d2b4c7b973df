"""Nested-sampling evidence estimation with likelihood-plateau handling.

The package has three layers:

* exact 1D measure machinery (:mod:`plateau_ns.measures`): survival
  functions, generalized inverses, atoms of the likelihood pushforward;
* the sampling engine (:mod:`plateau_ns.engine`): vanilla, randomized, and
  split nested sampling under a strict likelihood-evaluation budget;
* diagnostics and oracles (:mod:`plateau_ns.diagnostics`): pushforward
  verification and independent evidence values.
"""

from .diagnostics import (
    EcdfReport,
    MissingSurvival,
    analytic_evidence_5d,
    inverse_defect_mass,
    pushforward_samples,
    quadrature_evidence_1d,
    verify_pushforward,
)
from .engine import (
    DegeneratePartition,
    NSResult,
    PlateauPartition,
    RunConfig,
    TraceRecord,
    partition_initial,
    posterior_summaries,
    run_randomized,
    run_split,
    run_strategy,
    run_vanilla,
)
from .measures import (
    Atom,
    PiecewiseProblem,
    PushforwardLaw,
    SpecError,
    atoms,
    boundary_atom_class,
    evidence_both_ways,
    inverse_defect_set,
    level_at_mass,
    load_problem,
    problem_from_spec,
    pushforward_law,
    survival_closed,
    survival_inverse,
    survival_open,
)
from .model import Model, build_piecewise_1d, build_reference_5d, reference_plateau_mass
from .problems import builtin_model, builtin_problem, catalog
from .sampler import BudgetExhausted, EvalLedger, StallDetected, derive_seed, make_rng

__version__ = "0.1.0"
