#!/usr/bin/env python3
"""Optimal-trust-vs-reliability curves for the built-in networks.

Writes one CSV per (fixture, start, mode) with columns p, trust
coordinates, and the optimal expected time. The tree run shows the
degree-indexed trusts bracketing the two start-dependent uniform trusts;
the 4-cycle run shows the two starts splitting apart.
"""

import argparse
import csv
from dataclasses import dataclass, field
from pathlib import Path

from satnav import ByDegree, trust_curve
from satnav import fixtures as fx


@dataclass
class CurveJob:
    fixture: str
    start: str
    mode: str = "uniform"


@dataclass
class Config:
    out_dir: Path
    p_lo: float = 0.05
    p_hi: float = 0.95
    p_step: float = 0.05
    jobs: list[CurveJob] = field(default_factory=lambda: [
        CurveJob("tree", "A"),
        CurveJob("tree", "B"),
        CurveJob("tree", "A", mode="counting"),
        CurveJob("c3", "A"),
        CurveJob("c4", "A"),
        CurveJob("c4", "C"),
    ])

    @property
    def grid(self):
        grid = []
        p = self.p_lo
        while p <= self.p_hi + 1e-12:
            grid.append(round(p, 10))
            p += self.p_step
        return grid


def run(config: Config) -> None:
    config.out_dir.mkdir(parents=True, exist_ok=True)
    for job in config.jobs:
        net = fx.fixture(job.fixture)
        rows = trust_curve(net, config.grid, job.start, mode=job.mode)
        path = config.out_dir / f"trust_{job.fixture}_{job.start}_{job.mode}.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            if job.mode == "counting":
                degrees = sorted(rows[0][1].policy.q_by_degree)
                writer.writerow(["p", *[f"q{k}" for k in degrees], "value"])
                for p, res in rows:
                    assert isinstance(res.policy, ByDegree)
                    writer.writerow([p, *[res.policy.q_by_degree[k]
                                          for k in degrees], res.value])
            else:
                writer.writerow(["p", "q", "value"])
                for p, res in rows:
                    writer.writerow([p, res.policy.q, res.value])
        print(f"wrote {path} ({len(rows)} rows)")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("results"))
    parser.add_argument("--step", type=float, default=0.05)
    args = parser.parse_args()
    run(Config(out_dir=args.out_dir, p_step=args.step))


if __name__ == "__main__":
    main()
