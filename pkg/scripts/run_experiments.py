#!/usr/bin/env python3
"""Run the three experiments and write their CSV files into one directory.

    python3 scripts/run_experiments.py --out results/ [--n-half 100 --grid-points 150]
"""

import argparse
import sys
import time
from dataclasses import replace
from pathlib import Path

from sympsurgery.harness import ExperimentConfig, branch_medians, records_to_csv, run_fig1, run_fig2, run_fig3


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=Path("results"))
    p.add_argument("--n-half", type=int, default=20)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-points", type=int, default=50)
    p.add_argument("--audit", action="store_true")
    a = p.parse_args()
    a.out.mkdir(parents=True, exist_ok=True)
    base = ExperimentConfig(n_half=a.n_half, trials=a.trials, seed=a.seed, grid_points=a.grid_points, audit=a.audit)

    t0 = time.perf_counter()
    recs = run_fig1(base)
    (a.out / "fig1.csv").write_text(records_to_csv(recs))
    done = [r for r in recs if not r.skipped]
    print(f"fig1: {len(done)} trials, sandwich {sum(r.sandwich_ok() for r in done)}, "
          f"sharp upper < coarse {sum(r.sharp_upper < r.coarse for r in done)}")

    for g, name in ((1e-3, "fig2_small"), (1e3, "fig2_large")):
        recs = run_fig2(replace(base, gamma_scale=g))
        (a.out / f"{name}.csv").write_text(records_to_csv(recs))
        m1, m2 = branch_medians(recs)
        print(f"{name}: median relative change branch 1 {m1:.3e}, branch 2 {m2:.3e}")

    grid = run_fig3(base)
    (a.out / "fig3.csv").write_text(grid.to_csv())
    print(f"fig3: argmin c={grid.argmin_c:.4f}, offset {grid.origin_offset()} steps, "
          f"near origin {grid.argmin_near_origin()}")
    print(f"total {time.perf_counter() - t0:.1f}s, CSV in {a.out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
