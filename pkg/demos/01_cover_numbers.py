"""Watch the cover numbers of one niching-survival run.

A population of mu = n + 1 individuals must eventually hold every vector of
the (2n/m + 1)-point Pareto front of the two-objective benchmark.  The
interesting quantity is the max cover number beta: how many copies of the
most-duplicated fitness vector the population carries.  It starts large
(random initialization piles everyone near the middle) and only ever
shrinks, because the niching loop serves the emptiest reference point
first.  Full coverage is the moment beta hits 1-ish and every front vector
is owned.

Run:  python3 demos/01_cover_numbers.py
"""

from ommlab.harness import RunConfig, run_single

result = run_single(RunConfig(m=2, n=32, mu=33, seed=42, strict_invariants=True))

print(f"covered the full front after {result.generations} generations "
      f"({result.fitness_evaluations} fitness evaluations)")
print("every consecutive generation pair passed the cover-number checks\n")

print(f"{'gen':>5} {'beta':>5} {'covered':>8} {'distinct':>9}  coverage")
for metrics in result.trace:
    if metrics.t % 25 == 0 or metrics.t == result.generations:
        bar = "#" * round(40 * float(metrics.coverage_fraction))
        print(f"{metrics.t:>5} {metrics.beta:>5} {metrics.covered:>8} "
              f"{metrics.distinct_fitness:>9}  {bar}")
