"""Connectivity phase transition: fraction of connected trials as the
radius constant crosses each family's threshold.

Sweeps multipliers 0.6..1.6 over disk, soft, and bluetooth in d=2 and
writes one combined CSV. Full scale takes a while; --quick cuts n and
the trial count for a smoke run.
"""

import argparse

from rgglab.experiments import ExperimentSpec, run_experiment, write_csv
from rgglab.geometry import thresholds

MULTIPLIERS = [0.6, 0.8, 0.9, 1.0, 1.1, 1.2, 1.4, 1.6]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=20_000)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--out", default="connectivity_sweep.csv")
    ap.add_argument("--quick", action="store_true", help="n=2000, 10 trials")
    args = ap.parse_args()
    n = 2_000 if args.quick else args.n
    trials = 10 if args.quick else args.trials

    t = thresholds(2)
    family_gamma = {"disk": t.gamma_star, "soft": t.soft_gamma,
                    "bluetooth": t.gamma_star_star}
    rows = []
    for model, base in family_gamma.items():
        for mult in MULTIPLIERS:
            spec = ExperimentSpec(kind="connectivity", dims=[2], n_values=[n],
                                  gamma=mult * base, model=model, trials=trials)
            rows.extend(run_experiment(spec))
            connected = sum(r.metric_value == 0 for r in rows[-trials:])
            print(f"{model:9s} mult={mult:.1f}  connected {connected}/{trials}")
    rows.sort(key=lambda r: (r.d, r.n, r.trial, r.model, r.gamma, r.metric_name))
    write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
