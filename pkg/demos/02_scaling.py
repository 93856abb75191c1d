"""Measure how runtime grows with problem size and fit a power law.

With mu = n + 1 the expected number of generations to cover the front
grows like n log n.  This demo runs a small grid (a few repetitions per
size, so ~a minute), fits log(generations) against log(n), and writes a
log-log SVG plot next to the CSV.  The fitted exponent lands between 1
and 2 — n log n masquerading as a power law over one noisy decade.

Run:  python3 demos/02_scaling.py
"""

from ommlab.harness import (
    RunConfig, fit_scaling, mean_generations_by_key, read_experiment,
    run_experiment,
)
from ommlab.plots import emit_plot

GRID = [RunConfig(m=2, n=n, mu=n + 1) for n in (16, 24, 32, 48, 64)]

run_experiment(GRID, repetitions=5, master_seed=1, out_path="scaling.csv")
rows = read_experiment("scaling.csv")

for (algo, n, mu), stats in sorted(
    mean_generations_by_key(rows).items(), key=lambda kv: int(kv[0][1])
):
    print(f"n={n:>3} mu={mu:>3}: mean {stats['mean']:7.1f} generations "
          f"over {stats['count']} runs")

fit = fit_scaling(rows, "n_pow")
print(f"\nfitted generations ~ n^{fit['exponent']:.3f}  "
      f"(R^2 = {fit['r_squared']:.4f})")

emit_plot(rows, "scaling", "scaling.svg")
print("wrote scaling.csv and scaling.svg")
