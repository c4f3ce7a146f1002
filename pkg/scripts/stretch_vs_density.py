"""Max graph/Euclidean stretch over 50 sampled vertices as n grows.

The supercritical disk graph should hug the Euclidean metric more and
more tightly; the CSV feeds the renderer's stretch panel.
"""

import argparse
import statistics
from collections import defaultdict

from rgglab.experiments import ExperimentSpec, run_experiment, write_csv

N_VALUES = [1_000, 3_000, 10_000, 30_000, 100_000]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--out", default="stretch_vs_density.csv")
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    n_values = N_VALUES[:3] if args.quick else N_VALUES
    trials = 5 if args.quick else args.trials

    spec = ExperimentSpec(kind="stretch", dims=[2], n_values=n_values,
                          trials=trials)
    rows = run_experiment(spec)
    write_csv(rows, args.out)

    by_n = defaultdict(list)
    for r in rows:
        if r.metric_name == "max_stretch":
            by_n[r.n].append(r.metric_value)
    for n in n_values:
        print(f"n={n:7d}  median max stretch {statistics.median(by_n[n]):.4f}")
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
