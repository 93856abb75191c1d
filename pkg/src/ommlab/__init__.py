"""NSGA-III / NSGA-II population dynamics on m-objective OneMinMax."""

from .benchmark import Domination, OneMinMax, coverage, dominates, weakly_dominates
from .harness import (
    RunConfig,
    RunResult,
    fit_scaling,
    run_experiment,
    run_single,
    write_trace,
)
from .instrumentation import (
    GenerationMetrics,
    InvariantViolation,
    check_cover_invariants,
    distance_to_target,
    snapshot,
)
from .nsga2 import crowding_distance, nsga2_survival
from .nsga3 import (
    NormalizationState,
    ReferencePointSet,
    associate,
    default_resolution,
    generate_reference_points,
    niching_select,
    nsga3_survival,
    perpendicular_distance,
    update_and_normalize,
)
from .population import (
    Individual,
    Population,
    concat,
    cover_numbers,
    max_cover_number,
    random_population,
)
from .rng import make_rng, mix_seed
from .sorting import FrontPartition, critical_front_index, non_dominated_sort
from .variation import produce_offspring, sample_parent_index, standard_bit_mutation

__all__ = [
    "Domination", "OneMinMax", "coverage", "dominates", "weakly_dominates",
    "RunConfig", "RunResult", "fit_scaling", "run_experiment", "run_single",
    "write_trace", "GenerationMetrics", "InvariantViolation",
    "check_cover_invariants", "distance_to_target", "snapshot",
    "crowding_distance", "nsga2_survival", "NormalizationState",
    "ReferencePointSet", "associate", "default_resolution",
    "generate_reference_points", "niching_select", "nsga3_survival",
    "perpendicular_distance", "update_and_normalize", "Individual",
    "Population", "concat", "cover_numbers", "max_cover_number",
    "random_population", "make_rng", "mix_seed", "FrontPartition",
    "critical_front_index", "non_dominated_sort", "produce_offspring",
    "sample_parent_index", "standard_bit_mutation",
]

__version__ = "0.1.0"
