"""The NSGA-II main loop without crossover, plus the SEMO and GSEMO baselines."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

from moea_lab.benchmarks import Problem, evaluate_many
from moea_lab.core import RandomSource
from moea_lab.selection import ScoredPopulation, SelectionScheme, score, select_parents, survival_select
from moea_lab.variation import bernoulli_positions, mutate_population


class Mutation(str, enum.Enum):
    ONE_BIT = "OneBit"
    BITWISE = "Bitwise"

    @property
    def letter(self) -> str:
        return "a" if self is Mutation.ONE_BIT else "b"

    @classmethod
    def parse(cls, text: str) -> "Mutation":
        key = text.strip().lower().replace("-", "").replace("_", "").replace(" ", "")
        aliases = {"onebit": cls.ONE_BIT, "a": cls.ONE_BIT, "bitwise": cls.BITWISE, "standard": cls.BITWISE, "b": cls.BITWISE}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown mutation {text!r}; expected OneBit or Bitwise") from None


class Termination(str, enum.Enum):
    FULL_FRONT_COVERED = "FullFrontCovered"
    BUDGET_EXHAUSTED = "BudgetExhausted"


class TieOrder(str, enum.Enum):
    """How equal objective values are ordered when computing crowding distances."""

    RANDOM = "random"
    STABLE = "stable"


@dataclass(frozen=True)
class EngineConfig:
    problem: Problem
    N: int
    scheme: SelectionScheme
    mutation: Mutation
    max_generations: int
    seed: int
    initial_population: np.ndarray | None = field(default=None, compare=False, repr=False)
    tie_order: TieOrder = TieOrder.RANDOM
    #: Stop as soon as the parent population covers the whole front.
    stop_on_full_coverage: bool = True

    def __post_init__(self):
        object.__setattr__(self, "scheme", SelectionScheme(self.scheme))
        object.__setattr__(self, "mutation", Mutation(self.mutation))
        object.__setattr__(self, "tie_order", TieOrder(self.tie_order))

    def validate(self, archive: bool = False) -> None:
        """Raise ``ValueError`` for an unusable configuration.

        ``archive`` skips the population-size checks, which SEMO/GSEMO ignore.
        """
        if not archive:
            if self.N < 2:
                raise ValueError(f"population size must be at least 2, got {self.N}")
            if self.scheme is SelectionScheme.TWO_PERMUTATION_TOURNAMENTS and self.N % 2:
                raise ValueError(f"two-permutation tournaments need an even population size, got {self.N}")
        if self.max_generations < 0:
            raise ValueError("the generation budget must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.initial_population is not None:
            pop = np.asarray(self.initial_population)
            rows = 1 if archive else self.N
            if pop.ndim != 2 or pop.shape[1] != self.problem.n or (not archive and pop.shape[0] != rows):
                raise ValueError(f"initial population must have shape ({rows}, {self.problem.n}), got {pop.shape}")
            if np.any((pop != 0) & (pop != 1)):
                raise ValueError("initial population may only contain 0 and 1")


class GenerationRecord(NamedTuple):
    generation: int
    covered: int
    has_zero_n: bool
    has_n_zero: bool


@dataclass
class RunTrace:
    """Per-generation front coverage of one run and how it ended.

    Arrays are indexed by generation ``t = 0 .. generations``; for SEMO and
    GSEMO a generation is one iteration.
    """

    algorithm: str
    problem: Problem
    population_size: int
    covered: np.ndarray
    has_zero_n: np.ndarray
    has_n_zero: np.ndarray
    termination: Termination
    generations: int
    evaluations: int
    final_population_objectives: np.ndarray
    final_population: np.ndarray = field(repr=False)

    @property
    def front_size(self) -> int:
        return self.problem.n + 1

    def coverage_ratio(self, t: int) -> Fraction:
        return Fraction(int(self.covered[t]), self.front_size)

    @property
    def coverage_ratios(self) -> np.ndarray:
        return self.covered / self.front_size

    def records(self) -> Iterator[GenerationRecord]:
        for t in range(len(self.covered)):
            yield GenerationRecord(t, int(self.covered[t]), bool(self.has_zero_n[t]), bool(self.has_n_zero[t]))


class _Recorder:
    def __init__(self, n: int):
        self.n = n
        self.covered: list[int] = []
        self.low: list[bool] = []
        self.high: list[bool] = []

    def __call__(self, objectives: np.ndarray) -> bool:
        n = self.n
        f1 = objectives[:, 0]
        on_front = f1[f1 + objectives[:, 1] == n]
        seen = np.zeros(n + 1, dtype=bool)
        seen[on_front] = True
        count = int(seen.sum())
        self.covered.append(count)
        self.low.append(bool(seen[0]))
        self.high.append(bool(seen[n]))
        return count == n + 1

    def trace(self, algorithm, problem, size, termination, evaluations, population, objectives) -> RunTrace:
        return RunTrace(
            algorithm=algorithm,
            problem=problem,
            population_size=size,
            covered=np.array(self.covered, dtype=np.int64),
            has_zero_n=np.array(self.low, dtype=bool),
            has_n_zero=np.array(self.high, dtype=bool),
            termination=termination,
            generations=len(self.covered) - 1,
            evaluations=evaluations,
            final_population_objectives=np.array(objectives, dtype=np.int64),
            final_population=np.array(population, dtype=np.uint8),
        )


class _Evaluator:
    """Counts every fitness evaluation."""

    def __init__(self, problem: Problem):
        self.problem = problem
        self.count = 0

    def __call__(self, population: np.ndarray) -> np.ndarray:
        self.count += len(population)
        return evaluate_many(self.problem, population)


def nsga2_run(config: EngineConfig) -> RunTrace:
    """Run the NSGA-II until the front is covered or the budget is spent.

    Every generation selects ``N`` parents from ``P_t`` (tournaments use ranks
    and crowding distances computed in ``P_t``), mutates each once, and keeps
    the best ``N`` of the ``2N`` parents and offspring. Objective values of
    survivors are carried over, so a generation costs exactly ``N``
    evaluations.
    """
    config.validate()
    problem, size = config.problem, config.N
    stable = config.tie_order is TieOrder.STABLE
    bitwise = config.mutation is Mutation.BITWISE
    rng = RandomSource(config.seed)
    evaluate = _Evaluator(problem)
    record = _Recorder(problem.n)

    if config.initial_population is not None:
        population = np.array(config.initial_population, dtype=np.uint8)
    else:
        population = rng.generator.integers(0, 2, size=(size, problem.n), dtype=np.uint8)
    objectives = evaluate(population)
    full = record(objectives)

    unscored = ScoredPopulation(
        objectives=objectives,
        ranks=np.ones(size, dtype=np.int64),
        keys=np.zeros(size, dtype=np.int64),
        scales=np.ones(size, dtype=np.int64),
        crowded_fronts=0,
    )
    for _ in range(config.max_generations):
        if full and config.stop_on_full_coverage:
            break
        if config.scheme.is_tournament:
            scored = score(objectives, rng, stable=stable)
        else:
            scored = unscored
        parents = select_parents(config.scheme, scored, rng)
        offspring = mutate_population(population[parents], bitwise, rng)
        combined = np.concatenate([population, offspring])
        combined_objectives = np.concatenate([objectives, evaluate(offspring)])
        survivors = survival_select(score(combined_objectives, rng, stable=stable, limit=size), size, rng)
        population = combined[survivors]
        objectives = combined_objectives[survivors]
        full = record(objectives)

    termination = Termination.FULL_FRONT_COVERED if full else Termination.BUDGET_EXHAUSTED
    return record.trace("NSGA-II", problem, size, termination, evaluate.count, population, objectives)


def _archive_run(config: EngineConfig, bitwise: bool, name: str) -> RunTrace:
    config.validate(archive=True)
    problem = config.problem
    n = problem.n
    rng = RandomSource(config.seed)
    evaluate = _Evaluator(problem)
    record = _Recorder(n)
    gen = rng.generator

    if config.initial_population is not None:
        first = np.array(config.initial_population, dtype=np.uint8)[0]
    else:
        first = gen.integers(0, 2, size=n, dtype=np.uint8)
    members = [first]
    values = evaluate(first[None, :])
    full = record(values)

    for _ in range(config.max_generations):
        if full and config.stop_on_full_coverage:
            break
        child = members[int(gen.integers(0, len(members)))].copy()
        if bitwise:
            child[bernoulli_positions(rng, n, 1.0 / n)] ^= 1
        else:
            child[int(gen.integers(0, n))] ^= 1
        z = evaluate(child[None, :])[0]
        if not np.any((values[:, 0] >= z[0]) & (values[:, 1] >= z[1])):
            keep = ~((z[0] >= values[:, 0]) & (z[1] >= values[:, 1]))
            members = [m for m, k in zip(members, keep) if k]
            members.append(child)
            values = np.concatenate([values[keep], z[None, :]])
        full = record(values)

    termination = Termination.FULL_FRONT_COVERED if full else Termination.BUDGET_EXHAUSTED
    return record.trace(name, problem, 1, termination, evaluate.count, np.array(members), values)


def semo_run(config: EngineConfig) -> RunTrace:
    """SEMO: uniform parent from the archive, one-bit mutation, weak-dominance archive."""
    return _archive_run(config, bitwise=False, name="SEMO")


def gsemo_run(config: EngineConfig) -> RunTrace:
    """GSEMO: as SEMO but with standard bit-wise mutation."""
    return _archive_run(config, bitwise=True, name="GSEMO")
