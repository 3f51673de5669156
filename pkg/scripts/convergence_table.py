#!/usr/bin/env python3
"""Grid-refinement table for the amplitude-10 Gaussian at t = 0.02.

Evolves the same data on a ladder of meshes (finest grid is the reference)
and prints |u|(0), max |u|, and the relative deviations.  The default ladder
ends at n=20000 and takes a few minutes.
"""

import argparse
import sys

from radnls import (EvolutionMode, InitialCondition, RunConfig, StepControl,
                    convergence_study)

DEFAULT_LADDER = [(1250, 100.0), (2500, 100.0), (5000, 100.0),
                  (10000, 100.0), (20000, 200.0)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tmax", type=float, default=0.02)
    ap.add_argument("--ladder", type=str, default=None,
                    help="comma-separated n:rmax pairs, e.g. 5000:100,10000:100")
    args = ap.parse_args(argv)

    if args.ladder:
        matrix = [(int(n), float(r)) for n, r in
                  (pair.split(":") for pair in args.ladder.split(","))]
    else:
        matrix = DEFAULT_LADDER

    base = RunConfig(ic=InitialCondition("gaussian", 10.0),
                     r_max=matrix[-1][1], n=matrix[-1][0],
                     mode=EvolutionMode(),
                     control=StepControl(t_end=args.tmax))
    report = convergence_study(base, matrix)

    print(f"{'n':>8} {'r_max':>8} {'|u|(0)':>16} {'max|u|':>16} "
          f"{'dev(0)':>10} {'dev(max)':>10}")
    for i, row in enumerate(report.rows):
        mark = "  <- ref" if i == report.reference_index else ""
        print(f"{row.n:>8} {row.r_max:>8.1f} {row.value_at_origin:>16.10f} "
              f"{row.max_value:>16.10f} {row.origin_deviation:>10.2e} "
              f"{row.max_deviation:>10.2e}{mark}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
