#!/usr/bin/env python3
"""Sweep master seeds and summarize how the encoding conditions compare.

For each master seed this prints per-condition mean and max purity
accuracy over the repeated runs, then tallies how often the coded-nominal
and combined conditions beat the ad hoc integer baseline on mean accuracy.
Useful for judging how stable the comparison is across RNG streams.
"""

import argparse

from complexrank import load_cars, run_experiment


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=10, help="master seeds 0..N-1")
    ap.add_argument("--repeats", type=int, default=20)
    args = ap.parse_args()

    dataset = load_cars()
    names = ("adhoc", "numeric", "nominal", "combined")
    wins = {"nominal": 0, "combined": 0}
    print(f"{'seed':>4}  " + "  ".join(f"{n:>20}" for n in names))
    for seed in range(args.seeds):
        report = run_experiment(dataset, repeats=args.repeats, master_seed=seed)
        stats = {}
        for c in report.conditions:
            accs = c.accuracies
            stats[c.name] = (sum(accs) / len(accs), max(accs))
        cells = [f"mean {stats[n][0]:.3f} max {stats[n][1]:.2f}" for n in names]
        print(f"{seed:>4}  " + "  ".join(f"{c:>20}" for c in cells))
        for name in wins:
            wins[name] += stats[name][0] > stats["adhoc"][0]

    print()
    for name, count in wins.items():
        print(
            f"{name} beats adhoc on mean accuracy in {count}/{args.seeds} seeds"
        )


if __name__ == "__main__":
    main()
