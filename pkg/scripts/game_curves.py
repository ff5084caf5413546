#!/usr/bin/env python3
"""Treasure-hunt game data: equilibrium trusts across reliabilities and the
best-response curves at one reliability.

The comparison file stacks three trust curves that order the same way at
every reliability: the asymmetric leader's trust on top, the symmetric
equilibrium trust in the middle, and the single-searcher optimal trust at
the bottom.
"""

import argparse
import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from satnav import (
    asymmetric_equilibrium,
    best_response_curves,
    star_optimal_trust,
    symmetric_equilibrium,
)


@dataclass
class Config:
    out_dir: Path
    p_step: float = 0.01
    response_p: float = 2 / 3
    response_points: int = 33


def run(config: Config) -> None:
    config.out_dir.mkdir(parents=True, exist_ok=True)

    path = config.out_dir / "game_trust_comparison.csv"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["p", "asymmetric_q", "asymmetric_value",
                         "symmetric_q", "individual_q"])
        for p in np.arange(0.5 + config.p_step, 1.0, config.p_step):
            asym = asymmetric_equilibrium(p)
            sym = symmetric_equilibrium(p)
            writer.writerow([f"{p:.4f}", asym.q_star, asym.value,
                             sym.q_star, star_optimal_trust(2, p)])
    print(f"wrote {path}")

    grid = np.linspace(0.03, 0.97, config.response_points)
    for mode in ("symmetric", "asymmetric"):
        curves = best_response_curves(config.response_p, mode, grid)
        path = config.out_dir / f"game_responses_{mode}.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["opponent_trust", "reply_of_II", "reply_of_I"])
            for g, r_hat, q_hat in zip(curves.opponent_q, curves.best_r,
                                       curves.best_q):
                writer.writerow([g, r_hat, q_hat])
        print(f"wrote {path}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=Path("results"))
    args = parser.parse_args()
    run(Config(out_dir=args.out_dir))


if __name__ == "__main__":
    main()
