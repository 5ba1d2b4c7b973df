#!/usr/bin/env python3
"""Run the 5D reference comparison grid and print the per-cell summary.

Writes the grid config, the per-run records CSV, and the summary JSON into
the output directory (default ./results_ref5d).  Use --full for the large
grid (n up to 500, 200 replicates); the default is the scaled-down grid the
acceptance suite uses, which finishes in a few minutes on one core.
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from plateau_ns.cli import main as cli_main


def grid_config(full):
    return {
        "model": "ref5d",
        "n_values": [50, 100, 500] if full else [50, 100],
        "a_values": [1e-3, 1e-5, 1e-7],
        "budget_multipliers": [10, 40],
        "replicates": 200 if full else 50,
        "base_seed": 20260810,
        "strategies": ["randomized", "split"],
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results_ref5d")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--full", action="store_true")
    args = parser.parse_args()

    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    config_path = outdir / "grid.json"
    config_path.write_text(json.dumps(grid_config(args.full), indent=2) + "\n")

    rc = cli_main([
        "experiment", str(config_path),
        "--out-dir", str(outdir),
        "--workers", str(args.workers),
    ])
    if rc != 0:
        return rc

    summary = json.loads((outdir / "summary.json").read_text())
    print(f"\nreference evidence: {summary['reference_evidence']:.6f}")
    print(f"{'strategy':<12}{'n':>5}{'a':>10}{'budget':>8}{'median Z':>12}{'median |err|':>14}")
    for cell in summary["cells"]:
        a = "-" if cell["a"] is None else f"{cell['a']:g}"
        print(
            f"{cell['strategy']:<12}{cell['n']:>5}{a:>10}{cell['budget_multiplier']:>8g}"
            f"{cell['z_median']:>12.6f}{cell['err_median']:>14.3e}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
