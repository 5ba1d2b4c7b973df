"""Command-line interface.

Subcommands:

* ``run``         one nested-sampling run; writes a trace CSV and a summary JSON.
* ``experiment``  a full strategy-comparison grid from a JSON config; writes
                  per-run records as CSV plus per-cell summary statistics.
* ``diagnose``    pushforward verification and the 5D analytic evidence.
* ``verify``      the measure-theory report for a 1D problem spec: atoms,
                  boundary-atom class, both sides of the evidence identity,
                  pushforward check, and the inverse-defect report.

All randomness is seed-driven; repeating an invocation with identical flags
reproduces every output file byte for byte.  The environment variable
``PLATEAU_NS_OUTDIR`` sets the default output directory.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import diagnostics, engine, measures
from .model import build_piecewise_1d, build_reference_5d
from .problems import builtin_model, builtin_problem
from .sampler import derive_seed, make_rng

__all__ = [
    "ExperimentGrid",
    "RunRecord",
    "grid_cells",
    "main",
    "read_run_records",
    "run_experiment",
    "summarize_records",
]

RUN_RECORD_HEADER = (
    "strategy", "n", "a", "budget", "seed",
    "Z_final", "abs_error", "evals_used", "termination",
)


# ---------------------------------------------------------------------------
# Experiment grids


@dataclass(frozen=True)
class ExperimentGrid:
    """A strategy-comparison grid: all combinations of active-set sizes,
    perturbation widths (randomized only), and budget multipliers, each
    repeated ``replicates`` times with cell-derived seeds."""

    n_values: tuple[int, ...]
    a_values: tuple[float, ...]
    budget_multipliers: tuple[float, ...]
    replicates: int
    base_seed: int
    strategies: tuple[str, ...] = ("randomized", "split")
    model: str = "ref5d"

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicates must be at least 1")
        if not self.n_values or not self.budget_multipliers:
            raise ValueError("n_values and budget_multipliers must be non-empty")
        for strategy in self.strategies:
            if strategy not in ("randomized", "split", "vanilla"):
                raise ValueError(f"unknown strategy {strategy!r}")
        if "randomized" in self.strategies and not self.a_values:
            raise ValueError("a_values must be non-empty when randomized is requested")
        if any(a <= 0 for a in self.a_values):
            raise ValueError("a_values must be positive")

    @classmethod
    def from_dict(cls, raw):
        try:
            return cls(
                n_values=tuple(int(n) for n in raw["n_values"]),
                a_values=tuple(float(a) for a in raw.get("a_values", ())),
                budget_multipliers=tuple(float(b) for b in raw["budget_multipliers"]),
                replicates=int(raw["replicates"]),
                base_seed=int(raw["base_seed"]),
                strategies=tuple(raw.get("strategies", ("randomized", "split"))),
                model=str(raw.get("model", "ref5d")),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad experiment config: {exc}") from exc


@dataclass(frozen=True)
class RunRecord:
    """One grid replicate: final evidence, error against the reference
    value, evaluations spent, and how the run terminated."""

    strategy: str
    n: int
    a: Optional[float]
    budget: float
    seed: int
    z_final: float
    abs_error: float
    evals_used: int
    termination: str

    def key(self):
        return (self.strategy, self.n, -1.0 if self.a is None else self.a, self.budget)


def grid_cells(grid):
    """Deterministic cell enumeration: (strategy, n, a, budget_multiplier)."""
    cells = []
    for n in grid.n_values:
        for mult in grid.budget_multipliers:
            for strategy in grid.strategies:
                if strategy == "randomized":
                    for a in grid.a_values:
                        cells.append((strategy, n, a, mult))
                else:
                    cells.append((strategy, n, None, mult))
    return cells


def grid_seeds(grid):
    """Seed for every (cell, replicate) pair; pairwise distinct in practice."""
    cells = grid_cells(grid)
    return {
        (ci, rep): derive_seed(grid.base_seed, ci, rep)
        for ci in range(len(cells))
        for rep in range(grid.replicates)
    }


def _resolve_model(ref):
    """A model from a built-in name or a problem-spec JSON path."""
    try:
        return builtin_model(ref)
    except KeyError:
        pass
    path = Path(ref)
    if path.exists():
        return build_piecewise_1d(measures.load_problem(path))
    raise ValueError(f"unknown model {ref!r}: not a built-in name or a spec file")


def reference_evidence(model):
    """The oracle evidence the grid errors are measured against."""
    if model.name == "ref5d":
        return diagnostics.analytic_evidence_5d()
    if model.problem is not None:
        return diagnostics.quadrature_evidence_1d(model.problem)
    raise ValueError(f"no reference evidence available for model {model.name!r}")


def _run_cell(payload):
    """One replicate; top-level so process pools can pickle it."""
    model_ref, strategy, n, a, mult, seed, z_ref = payload
    model = _resolve_model(model_ref)
    config = engine.RunConfig(
        n_active=n, budget_multiplier=mult, seed=seed, strategy=strategy, a=a
    )
    try:
        result = engine.run_strategy(model, config)
        return RunRecord(
            strategy=strategy, n=n, a=a, budget=mult, seed=seed,
            z_final=result.z, abs_error=abs(result.z - z_ref),
            evals_used=result.evals_used, termination=result.termination,
        )
    except Exception as exc:  # a failed replicate is recorded, never dropped
        return RunRecord(
            strategy=strategy, n=n, a=a, budget=mult, seed=seed,
            z_final=float("nan"), abs_error=float("nan"),
            evals_used=0, termination=f"error: {exc}",
        )


def run_experiment(grid, workers=1, progress=None):
    """Run the whole grid; returns records sorted by cell then seed.

    Serial and parallel execution produce identical record sets because
    every replicate's seed is derived from its cell and replicate index.
    """
    cells = grid_cells(grid)
    model = _resolve_model(grid.model)
    z_ref = reference_evidence(model)
    payloads = [
        (grid.model, strategy, n, a, mult, derive_seed(grid.base_seed, ci, rep), z_ref)
        for ci, (strategy, n, a, mult) in enumerate(cells)
        for rep in range(grid.replicates)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_cell, payloads, chunksize=8))
    else:
        records = []
        for i, payload in enumerate(payloads):
            records.append(_run_cell(payload))
            if progress and (i + 1) % 50 == 0:
                progress(i + 1, len(payloads))
    records.sort(key=lambda r: (r.key(), r.seed))
    return records


def summarize_records(records):
    """Per-cell median and quartiles of the final evidence and its error."""
    by_cell: dict[tuple, list[RunRecord]] = {}
    for rec in records:
        by_cell.setdefault(rec.key(), []).append(rec)
    cells = []
    for key in sorted(by_cell):
        strategy, n, a, budget = key
        group = by_cell[key]
        zs = np.array([r.z_final for r in group])
        errs = np.array([r.abs_error for r in group])
        ok = ~np.isnan(zs)
        q = lambda arr, p: float(np.percentile(arr[ok], p)) if ok.any() else float("nan")
        cells.append({
            "strategy": strategy,
            "n": int(n),
            "a": None if a < 0 else a,
            "budget_multiplier": budget,
            "replicates": len(group),
            "failed": int((~ok).sum()),
            "z_median": q(zs, 50), "z_q1": q(zs, 25), "z_q3": q(zs, 75),
            "err_median": q(errs, 50), "err_q1": q(errs, 25), "err_q3": q(errs, 75),
        })
    return cells


def write_run_records(path, records):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RUN_RECORD_HEADER)
        for r in records:
            writer.writerow([
                r.strategy, r.n, "" if r.a is None else repr(r.a), repr(r.budget),
                r.seed, repr(r.z_final), repr(r.abs_error), r.evals_used, r.termination,
            ])


def read_run_records(path):
    records = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            records.append(RunRecord(
                strategy=row["strategy"],
                n=int(row["n"]),
                a=None if row["a"] == "" else float(row["a"]),
                budget=float(row["budget"]),
                seed=int(row["seed"]),
                z_final=float(row["Z_final"]),
                abs_error=float(row["abs_error"]),
                evals_used=int(row["evals_used"]),
                termination=row["termination"],
            ))
    return records


# ---------------------------------------------------------------------------
# Subcommands


def _outdir(explicit=None):
    base = explicit or os.environ.get("PLATEAU_NS_OUTDIR") or "."
    path = Path(base)
    path.mkdir(parents=True, exist_ok=True)
    return path


def cmd_run(args):
    model = _resolve_model(args.model)
    config = engine.RunConfig(
        n_active=args.n,
        budget_multiplier=args.budget_mult,
        seed=args.seed,
        strategy=args.strategy,
        a=args.a,
        remainder_term=not args.no_remainder,
        max_attempts=args.max_attempts,
    )
    result = engine.run_strategy(model, config)
    if args.out is not None:
        trace_path = Path(args.out)
        trace_path.parent.mkdir(parents=True, exist_ok=True)
    else:
        name = f"run_{args.strategy}_n{args.n}_seed{args.seed}.csv"
        trace_path = _outdir() / name
    summary_path = trace_path.with_suffix(".json")
    trace_path.write_text(engine.trace_csv(result), encoding="utf-8")
    summary_path.write_text(engine.summary_json(result, config), encoding="utf-8")
    print(
        f"{args.strategy} n={args.n} seed={args.seed}: Z={result.z!r} "
        f"termination={result.termination} evals={result.evals_used} -> {trace_path}"
    )
    return 0


def cmd_experiment(args):
    with open(args.config, "r", encoding="utf-8") as fh:
        grid = ExperimentGrid.from_dict(json.load(fh))
    outdir = _outdir(args.out_dir)
    records = run_experiment(
        grid,
        workers=args.workers,
        progress=lambda done, total: print(f"  {done}/{total} runs", file=sys.stderr),
    )
    records_path = outdir / "run_records.csv"
    write_run_records(records_path, records)
    summary = {
        "model": grid.model,
        "base_seed": grid.base_seed,
        "replicates": grid.replicates,
        "reference_evidence": reference_evidence(_resolve_model(grid.model)),
        "cells": summarize_records(records),
    }
    summary_path = outdir / "summary.json"
    summary_path.write_text(
        json.dumps(summary, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    if args.traces:
        for rec in records:
            model = _resolve_model(grid.model)
            config = engine.RunConfig(
                n_active=rec.n, budget_multiplier=rec.budget, seed=rec.seed,
                strategy=rec.strategy, a=rec.a,
            )
            result = engine.run_strategy(model, config)
            a_tag = "" if rec.a is None else f"_a{rec.a:g}"
            name = f"trace_{rec.strategy}_n{rec.n}{a_tag}_b{rec.budget:g}_s{rec.seed}.csv"
            (outdir / name).write_text(engine.trace_csv(result), encoding="utf-8")
    print(f"wrote {records_path} and {summary_path} ({len(records)} runs)")
    return 0


def cmd_diagnose_pushforward(args):
    model = _resolve_model(args.model)
    rng = make_rng(args.seed)
    report = diagnostics.verify_pushforward(
        model, args.samples, rng, threshold=args.threshold, against=args.against
    )
    payload = report.to_dict()
    payload["model"] = args.model
    payload["against"] = args.against
    payload["seed"] = args.seed
    print(json.dumps(payload, sort_keys=True))
    return 0 if report.passed else 1


def cmd_diagnose_evidence(args):
    z = diagnostics.analytic_evidence_5d(quad_points=args.quad_points, plateau=args.plateau)
    print(json.dumps({"quad_points": args.quad_points, "plateau": args.plateau, "z": z}))
    return 0


def cmd_verify(args):
    try:
        problem = measures.load_problem(args.spec)
    except (measures.SpecError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    model = build_piecewise_1d(problem)
    atoms = measures.atoms(problem)
    print(f"problem: {problem.name or args.spec}")
    if atoms:
        for atom in atoms:
            print(
                f"atom: level={atom.level!r} tail_mass={atom.tail_mass!r} jump={atom.jump!r}"
            )
    else:
        print("atom: (none)")
    print(f"class: {measures.boundary_atom_class(problem)}")

    lhs, rhs = measures.evidence_both_ways(problem)
    gap = abs(lhs - rhs)
    identity_ok = gap < 1e-8
    print(f"evidence (prior integral)   = {lhs!r}")
    print(f"evidence (mass reparam)     = {rhs!r}")
    print(f"|difference| = {gap:.3e} ({'ok' if identity_ok else 'FAIL'})")

    report = diagnostics.verify_pushforward(
        model, args.samples, make_rng(args.seed), threshold=args.threshold, against="law"
    )
    print(
        f"pushforward vs predicted law: ks={report.ks_distance:.5f} "
        f"threshold={report.threshold} ({'ok' if report.passed else 'FAIL'})"
    )

    defects = measures.inverse_defect_set(problem)
    defects_ok = all(d.mass <= 1e-12 for d in defects)
    if defects:
        for d in defects:
            print(f"inverse defect: x in [{d.x_lo!r}, {d.x_hi!r}] mass={d.mass!r}")
    else:
        print("inverse defect: (none)")

    ok = identity_ok and report.passed and defects_ok
    print("result: PASS" if ok else "result: FAIL")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# Parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="plateau-ns",
        description="Nested-sampling evidence estimation with likelihood-plateau handling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="one nested-sampling run")
    run_p.add_argument("--model", default="ref5d",
                       help="built-in model name or problem-spec JSON path")
    run_p.add_argument("--strategy", required=True,
                       choices=["vanilla", "randomized", "split"])
    run_p.add_argument("--n", type=int, required=True, help="active-set size")
    run_p.add_argument("--budget-mult", type=float, default=40.0,
                       help="budget = budget-mult * n likelihood evaluations")
    run_p.add_argument("--seed", type=int, required=True)
    run_p.add_argument("--a", type=float, default=None,
                       help="perturbation half-width (randomized only)")
    run_p.add_argument("--no-remainder", action="store_true",
                       help="skip the terminal remaining-mass correction")
    run_p.add_argument("--max-attempts", type=int, default=None)
    run_p.add_argument("--out", default=None,
                       help="trace CSV path; the summary JSON lands beside it")
    run_p.set_defaults(func=cmd_run)

    exp_p = sub.add_parser("experiment", help="run a strategy-comparison grid")
    exp_p.add_argument("config", help="experiment grid JSON")
    exp_p.add_argument("--out-dir", default=None)
    exp_p.add_argument("--workers", type=int, default=1)
    exp_p.add_argument("--traces", action="store_true",
                       help="also write one trace CSV per replicate")
    exp_p.set_defaults(func=cmd_experiment)

    diag_p = sub.add_parser("diagnose", help="distributional diagnostics")
    diag_sub = diag_p.add_subparsers(dest="diagnostic", required=True)

    push_p = diag_sub.add_parser("pushforward", help="verify the mass-coordinate law")
    push_p.add_argument("--model", required=True)
    push_p.add_argument("--samples", type=int, default=10_000)
    push_p.add_argument("--seed", type=int, default=0)
    push_p.add_argument("--against", choices=["uniform", "law"], default="law")
    push_p.add_argument("--threshold", type=float, default=0.03)
    push_p.set_defaults(func=cmd_diagnose_pushforward)

    ev_p = diag_sub.add_parser("evidence-5d", help="analytic 5D reference evidence")
    ev_p.add_argument("--quad-points", type=int, default=10_000)
    ev_p.add_argument("--plateau", type=float, default=1.01)
    ev_p.set_defaults(func=cmd_diagnose_evidence)

    ver_p = sub.add_parser("verify", help="measure-theory report for a 1D problem spec")
    ver_p.add_argument("spec", help="problem-spec JSON path")
    ver_p.add_argument("--samples", type=int, default=10_000)
    ver_p.add_argument("--seed", type=int, default=0)
    ver_p.add_argument("--threshold", type=float, default=0.03)
    ver_p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "run" and args.strategy == "randomized" and args.a is None:
        parser.error("--a is required with --strategy randomized")
    try:
        return args.func(args)
    except (ValueError, measures.SpecError, diagnostics.MissingSurvival, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
