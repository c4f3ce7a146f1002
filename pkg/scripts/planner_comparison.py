"""Compare the four roadmap variants on the toy scenario.

Reproducible metrics (success, path length, length over geodesic) land
in the main CSV; build and query wall-clock go to a .timings.csv
sidecar with the same schema.
"""

import argparse
from collections import defaultdict

from rgglab.experiments import (
    ExperimentSpec,
    run_experiment,
    strip_timing,
    timing_rows,
    write_csv,
)

ALGORITHMS = ["prm", "soft_prm", "bluetooth_prm", "embedded_prm"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=20_000)
    ap.add_argument("--trials", type=int, default=30)
    ap.add_argument("--out", default="planner_comparison.csv")
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    n = 2_000 if args.quick else args.n
    trials = 5 if args.quick else args.trials

    spec = ExperimentSpec(kind="planner", dims=[2], n_values=[n],
                          trials=trials, algorithms=ALGORITHMS)
    rows = run_experiment(spec)
    stable = strip_timing(rows)
    write_csv(stable, args.out)
    side = args.out.removesuffix(".csv") + ".timings.csv"
    write_csv(timing_rows(rows), side)

    stats = defaultdict(lambda: defaultdict(list))
    for r in rows:
        stats[r.model][r.metric_name].append(r.metric_value)
    for alg in ALGORITHMS:
        s = stats[alg]
        succ = sum(s["success"])
        build = sum(s["build_seconds"]) / max(len(s["build_seconds"]), 1)
        print(f"{alg:14s} success {succ:g}/{trials}  mean build {build:.2f}s")
    print(f"wrote {len(stable)} rows to {args.out} and "
          f"{len(rows) - len(stable)} timing rows to {side}")


if __name__ == "__main__":
    main()
