#!/usr/bin/env python3
"""Repeat the car-brand clustering comparison and print the bucket table.

Library-level twin of `complexrank experiment`; handy when poking at the
report object interactively or dumping the full JSON next to the table.
"""

import argparse
from pathlib import Path

from complexrank import load_cars, run_experiment
from complexrank.cluster import DEFAULT_CONDITIONS


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0, help="master seed")
    ap.add_argument("--json-out", type=Path, help="also write the full JSON report here")
    args = ap.parse_args()

    report = run_experiment(
        load_cars(),
        conditions=DEFAULT_CONDITIONS,
        repeats=args.repeats,
        master_seed=args.seed,
    )
    print(report.render_table())
    for c in report.conditions:
        accs = c.accuracies
        print(
            f"{c.name:>9}: mean accuracy {sum(accs) / len(accs):.3f}, "
            f"best {max(accs):.2f}, worst {min(accs):.2f}"
        )
    if args.json_out:
        args.json_out.write_text(report.to_json(), encoding="utf-8")
        print(f"\nfull report written to {args.json_out}")


if __name__ == "__main__":
    main()
