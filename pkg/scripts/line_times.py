#!/usr/bin/env python3
"""Crossing times along a unit line for a few reliabilities.

One CSV with, per reliability, the optimal expected time from the leaf to
node j and the per-arc increments (which grow with j: later arcs cost more
because there is more room to backtrack).
"""

import argparse
import csv
from dataclasses import dataclass
from pathlib import Path

from satnav import unit_line_cross_time


@dataclass
class Config:
    out_dir: Path
    max_j: int = 6
    reliabilities: tuple = (0.5, 0.6, 0.75, 0.9)


def run(config: Config) -> None:
    config.out_dir.mkdir(parents=True, exist_ok=True)
    path = config.out_dir / "line_crossing_times.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["p", "j", "cross_time", "increment"])
        for p in config.reliabilities:
            for j in range(1, config.max_j + 1):
                cross = unit_line_cross_time(j, p)
                increment = unit_line_cross_time(j + 1, p) - cross
                writer.writerow([p, j, cross, increment])
    print(f"wrote {path}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("results"))
    parser.add_argument("--max-j", type=int, default=6)
    args = parser.parse_args()
    run(Config(out_dir=args.out_dir, max_j=args.max_j))


if __name__ == "__main__":
    main()
