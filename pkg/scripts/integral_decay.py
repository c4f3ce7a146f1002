"""Connectivity integral I_n against n for a supercritical and a
subcritical radius constant (decays to 0 above threshold, blows up
below)."""

import argparse

from rgglab.experiments import ExperimentSpec, run_experiment, write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--outer-samples", type=int, default=1_000_000)
    ap.add_argument("--out", default="integral_decay.csv")
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    outer = 50_000 if args.quick else args.outer_samples

    spec = ExperimentSpec(kind="integral", dims=[2],
                          n_values=[1_000, 10_000, 100_000],
                          gammas=[1.5, 0.5], trials=args.trials,
                          outer_samples=outer)
    rows = run_experiment(spec)
    write_csv(rows, args.out)
    for r in rows:
        if r.metric_name == "In_estimate":
            print(f"gamma={r.gamma}  n={r.n:7d}  trial {r.trial}  In={r.metric_value:.6g}")
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
