"""NSGA-II runtime laboratory on OneMinMax and LeadingOnesTrailingZeroes."""

from moea_lab.benchmarks import Problem, ProblemKind, evaluate, is_pareto_optimal, pareto_front
from moea_lab.core import ObjectiveVector, RandomSource, strictly_dominates, weakly_dominates
from moea_lab.crowding import INF, crowding_distances
from moea_lab.engines import EngineConfig, Mutation, RunTrace, Termination, gsemo_run, nsga2_run, semo_run
from moea_lab.metrics import coverage_ratio, first_generation_both_extremes, max_uncovered_gap
from moea_lab.ranking import FrontPartition, fast_nondominated_sort
from moea_lab.selection import (
    Comparison,
    ScoredPopulation,
    SelectionScheme,
    score,
    select_parents,
    survival_select,
    total_order_better,
)
from moea_lab.variation import bitwise_mutation, one_bit_mutation

__version__ = "0.1.0"

__all__ = [
    "Comparison",
    "EngineConfig",
    "FrontPartition",
    "INF",
    "Mutation",
    "ObjectiveVector",
    "Problem",
    "ProblemKind",
    "RandomSource",
    "RunTrace",
    "ScoredPopulation",
    "SelectionScheme",
    "Termination",
    "bitwise_mutation",
    "coverage_ratio",
    "crowding_distances",
    "evaluate",
    "fast_nondominated_sort",
    "first_generation_both_extremes",
    "gsemo_run",
    "is_pareto_optimal",
    "max_uncovered_gap",
    "nsga2_run",
    "one_bit_mutation",
    "pareto_front",
    "score",
    "select_parents",
    "semo_run",
    "strictly_dominates",
    "survival_select",
    "total_order_better",
    "weakly_dominates",
]
