"""Run orchestration: single runs, experiment grids, CSV persistence, fits.

Generations are the scientific unit; wall time is recorded for curiosity
only.  A run stops at full Pareto-front coverage (or an optional partial
coverage target) or at the generation cap, whichever comes first.
"""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .benchmark import OneMinMax
from .instrumentation import (
    GenerationMetrics,
    InvariantViolation,
    check_cover_invariants,
    snapshot,
)
from .nsga2 import nsga2_survival
from .nsga3 import (
    NormalizationState,
    default_resolution,
    generate_reference_points,
    nsga3_survival,
)
from .population import Population, concat, random_population
from .rng import make_rng, mix_seed
from .variation import produce_offspring

EXPERIMENT_COLUMNS = [
    "algo", "m", "n", "mu", "p", "eps_nad", "seed", "repetition",
    "generations", "capped", "fitness_evals", "final_beta", "wall_ms",
]
TRACE_COLUMNS = [
    "t", "beta", "covered", "coverage_fraction",
    "max_ones", "min_ones", "distinct_fitness",
]


@dataclass
class RunConfig:
    algo: str = "nsga3"  # "nsga3" or "nsga2"
    m: int = 2
    n: int = 32
    mu: int = 33
    p: int | None = None          # default ceil(2 m^1.5 n)
    eps_nad: float | None = None  # default n
    seed: int = 0
    max_gens: int | None = None   # default ceil(50 n^2 ln(n) / mu)
    trace_every: int = 1
    stop_at_coverage: Fraction = Fraction(1)
    strict_invariants: bool = False

    def resolved(self) -> "RunConfig":
        """Fill defaults and validate."""
        if self.algo not in ("nsga3", "nsga2"):
            raise ValueError(f"unknown algorithm {self.algo!r}")
        if self.m % 2 != 0 or self.m < 2:
            raise ValueError("m must be a positive even integer")
        if self.n < 1 or (2 * self.n) % self.m != 0:
            raise ValueError("n must be a positive multiple of m/2")
        if self.mu < 1:
            raise ValueError("mu must be positive")
        p = self.p if self.p is not None else default_resolution(self.m, self.n)
        eps_nad = self.eps_nad if self.eps_nad is not None else float(self.n)
        max_gens = self.max_gens
        if max_gens is None:
            max_gens = math.ceil(
                50.0 * self.n**2 * math.log(max(self.n, 2)) / self.mu
            )
        if p < 1 or max_gens < 1:
            raise ValueError("p and max_gens must be positive")
        return replace(self, p=p, eps_nad=eps_nad, max_gens=max_gens)


@dataclass
class RunResult:
    config: RunConfig
    generations: int
    capped: bool
    final_beta: int
    wall_ms: float
    trace: list[GenerationMetrics] = field(default_factory=list)

    @property
    def fitness_evaluations(self) -> int:
        return self.config.mu * self.generations


def run_single(config: RunConfig) -> RunResult:
    """Execute one seeded run to the coverage target or the cap."""
    cfg = config.resolved()
    start = time.perf_counter()
    problem = OneMinMax(cfg.m, cfg.n)
    front = problem.pareto_front()
    rng = make_rng(cfg.seed)
    pop = random_population(problem, cfg.mu, rng)

    rps = norm = None
    if cfg.algo == "nsga3":
        rps = generate_reference_points(cfg.m, cfg.p)
        norm = NormalizationState(cfg.m, cfg.eps_nad)

    trace: list[GenerationMetrics] = []
    metrics = snapshot(pop, front, 0)
    trace.append(metrics)
    t = 0
    capped = False
    while metrics.coverage_fraction < cfg.stop_at_coverage:
        if t >= cfg.max_gens:
            capped = True
            break
        offspring = produce_offspring(pop, problem, rng)
        pool = concat(pop, offspring)
        if cfg.algo == "nsga3":
            nxt = nsga3_survival(pool, cfg.mu, rps, norm, rng)
        else:
            nxt = nsga2_survival(pool, cfg.mu, rng)
        if cfg.strict_invariants:
            violations = check_cover_invariants(
                pop, nxt, front, cfg.mu, problem.front_size
            )
            if violations:
                raise InvariantViolation(
                    f"generation {t}: " + "; ".join(violations)
                )
        pop = nxt
        t += 1
        metrics = snapshot(pop, front, t)
        if t % cfg.trace_every == 0:
            trace.append(metrics)
    if trace[-1].t != t:
        trace.append(metrics)

    wall_ms = (time.perf_counter() - start) * 1000.0
    return RunResult(
        config=cfg,
        generations=t,
        capped=capped,
        final_beta=metrics.beta,
        wall_ms=wall_ms,
        trace=trace,
    )


def _run_row(args: tuple[RunConfig, int, int]) -> list:
    cfg, repetition, seed = args
    result = run_single(replace(cfg, seed=seed))
    c = result.config
    return [
        c.algo, c.m, c.n, c.mu, c.p, _format_number(c.eps_nad), seed,
        repetition, result.generations, int(result.capped),
        result.fitness_evaluations, result.final_beta,
        f"{result.wall_ms:.3f}",
    ]


def _format_number(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def run_experiment(
    grid: list[RunConfig],
    repetitions: int,
    master_seed: int,
    out_path: str,
    jobs: int = 1,
) -> None:
    """One CSV row per (config, repetition), in grid-then-repetition order.

    Per-run seeds are mixed from the master seed and the row index, so the
    output is independent of scheduling; rows are flushed as they complete
    in order, surviving interruption with a usable prefix.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be positive")
    tasks = []
    row_index = 0
    for cfg in grid:
        for rep in range(repetitions):
            tasks.append((cfg.resolved(), rep, mix_seed(master_seed, row_index)))
            row_index += 1

    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(EXPERIMENT_COLUMNS)
        fh.flush()
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for row in pool.map(_run_row, tasks):
                    writer.writerow(row)
                    fh.flush()
        else:
            for task in tasks:
                writer.writerow(_run_row(task))
                fh.flush()


def write_trace(trace: list[GenerationMetrics], out_path: str) -> None:
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_COLUMNS)
        for g in trace:
            writer.writerow([
                g.t, g.beta, g.covered,
                _format_number(float(g.coverage_fraction)),
                g.max_ones, g.min_ones, g.distinct_fitness,
            ])


def read_experiment(path: str) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def mean_generations_by_key(
    rows: list[dict], keys: tuple[str, ...] = ("algo", "n", "mu")
) -> dict[tuple, dict]:
    """Mean/median/stddev of generations per key, CAPPED rows excluded."""
    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        groups.setdefault(tuple(row[k] for k in keys), []).append(row)
    out = {}
    for key, members in groups.items():
        done = [int(r["generations"]) for r in members if r["capped"] == "0"]
        out[key] = {
            "mean": float(np.mean(done)) if done else math.nan,
            "median": float(np.median(done)) if done else math.nan,
            "stddev": float(np.std(done)) if done else math.nan,
            "count": len(done),
            "capped": len(members) - len(done),
        }
    return out


def fit_scaling(rows: list[dict], model: str) -> dict:
    """Least-squares slope of log(mean generations) against log(predictor).

    ``n_pow`` uses predictor n (slope = apparent power-law exponent);
    ``n_log_n_over_mu`` uses predictor n^2 ln(n) / mu (slope near 1 means
    the quadratic-log law with the 1/mu speedup fits).
    """
    if model not in ("n_pow", "n_log_n_over_mu"):
        raise ValueError(f"unknown scaling model {model!r}")
    means = mean_generations_by_key(rows, keys=("n", "mu"))
    xs, ys = [], []
    for (n_str, mu_str), stats in sorted(
        means.items(), key=lambda kv: int(kv[0][0])
    ):
        if stats["count"] == 0:
            continue
        n, mu = int(n_str), int(mu_str)
        predictor = (
            float(n) if model == "n_pow" else n**2 * math.log(n) / mu
        )
        xs.append(math.log(predictor))
        ys.append(math.log(stats["mean"]))
    if len(set(xs)) < 3:
        raise ValueError("need at least 3 distinct predictor values to fit")
    x, y = np.array(xs), np.array(ys)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid**2).sum()) / ss_tot if ss_tot > 0 else 1.0
    return {
        "model": model,
        "exponent": float(slope),
        "intercept": float(intercept),
        "r_squared": r2,
        "residuals": [float(r) for r in resid],
        "points": len(xs),
    }
