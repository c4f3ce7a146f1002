"""Toy obstacle scenario: free-space connectivity deficit and the
origin-to-center query stretch against the geodesic, versus n.

The environment is the symmetric four-box layout at 25% coverage.
"""

import argparse
import statistics
from collections import defaultdict

from rgglab.experiments import ExperimentSpec, run_experiment, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--coverage", type=float, default=0.25)
    ap.add_argument("--out", default="obstacle_toy.csv")
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    n_values = [1_000, 10_000] if args.quick else [1_000, 10_000, 100_000]
    trials = 5 if args.quick else args.trials

    spec = ExperimentSpec(kind="obstacle", dims=[2], n_values=n_values,
                          trials=trials, coverage=args.coverage)
    rows = run_experiment(spec)
    write_csv(rows, args.out)

    metrics = defaultdict(lambda: defaultdict(list))
    for r in rows:
        metrics[r.metric_name][r.n].append(r.metric_value)
    for n in n_values:
        deficit = statistics.median(metrics["deficit"][n])
        success = sum(metrics["query_success"][n])
        line = f"n={n:7d}  deficit median {deficit:g}  success {success:g}/{trials}"
        if metrics["stretch_geodesic"][n]:
            line += f"  geodesic stretch median {statistics.median(metrics['stretch_geodesic'][n]):.4f}"
        print(line)
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
