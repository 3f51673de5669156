#!/usr/bin/env python3
"""Run the three production configurations and write their output bundles.

Each run produces timeseries.csv, per-snapshot profile/spectrum CSVs, and a
summary.txt under OUT/<label>/.  The full set takes tens of minutes on one
core; pass --quick for a downscaled smoke version (~1 min, values NOT
comparable to the reference values).
"""

import argparse
import sys
from pathlib import Path

from radnls import (InitialCondition, RunConfig, StepControl, run_experiment,
                    snapshot_schedule)

CONFIGS = {
    "gauss": dict(ic=InitialCondition("gaussian", 10.0),
                  n=10000, r_max=100.0, t_end=0.04),
    "ring": dict(ic=InitialCondition("ring", 8.0),
                 n=32000, r_max=100.0, t_end=0.2),
    "osc": dict(ic=InitialCondition("oscillatory_gaussian", 4.0, alpha=10.0),
                n=40000, r_max=100.0, t_end=0.1),
}


def build_config(name, out_root, quick):
    spec = CONFIGS[name]
    n = spec["n"] // 8 if quick else spec["n"]
    r_max = spec["r_max"]
    t_end = spec["t_end"]
    out_dir = out_root / name
    out_dir.mkdir(parents=True, exist_ok=True)
    return RunConfig(
        ic=spec["ic"], r_max=r_max, n=n,
        control=StepControl(t_end=t_end,
                            snapshot_times=snapshot_schedule(t_end, 11)),
        out_dir=out_dir, label=name)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("runs"))
    ap.add_argument("--only", choices=sorted(CONFIGS), action="append",
                    help="run a subset (repeatable); default all three")
    ap.add_argument("--quick", action="store_true",
                    help="n/8 grids for a fast smoke run")
    args = ap.parse_args(argv)

    names = args.only or sorted(CONFIGS)
    worst = 0
    for name in names:
        cfg = build_config(name, args.out, args.quick)
        print(f"== {name}: n={cfg.n}, r_max={cfg.r_max}, t_end={cfg.control.t_end}")
        result = run_experiment(cfg)
        for key in ("status", "wall_time_s", "final_h2", "final_l14",
                    "max_mass_rel_err", "max_energy_rel_err"):
            if key in result.summary:
                print(f"   {key} = {result.summary[key]}")
        worst = max(worst, result.status)
    return worst


if __name__ == "__main__":
    sys.exit(main())
