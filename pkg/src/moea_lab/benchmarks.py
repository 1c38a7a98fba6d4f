"""OneMinMax and LeadingOnesTrailingZeroes with their Pareto fronts."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from moea_lab.core import ObjectiveVector


class ProblemKind(str, enum.Enum):
    ONE_MIN_MAX = "OneMinMax"
    LOTZ = "LOTZ"

    @classmethod
    def parse(cls, text: str) -> "ProblemKind":
        key = text.strip().lower().replace("-", "").replace("_", "")
        aliases = {
            "oneminmax": cls.ONE_MIN_MAX,
            "omm": cls.ONE_MIN_MAX,
            "lotz": cls.LOTZ,
            "leadingonestrailingzeroes": cls.LOTZ,
            "leadingonestrailingzeros": cls.LOTZ,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown problem {text!r}; expected OneMinMax or LOTZ") from None


@dataclass(frozen=True)
class Problem:
    kind: ProblemKind
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", ProblemKind(self.kind))
        if self.n < 1:
            raise ValueError(f"problem size must be at least 1, got {self.n}")

    @property
    def front_size(self) -> int:
        return self.n + 1

    def __str__(self) -> str:
        return f"{self.kind.value}(n={self.n})"


def evaluate_many(problem: Problem, population: np.ndarray) -> np.ndarray:
    """Objective values of every row of ``population`` as an ``(m, 2)`` int64 array.

    LOTZ is computed by prefix/suffix scans: the all-ones string has zero
    trailing zeros and the all-zeros string has zero leading ones.
    """
    pop = np.asarray(population)
    if pop.ndim != 2 or pop.shape[1] != problem.n:
        raise ValueError(f"expected a population with {problem.n} columns, got shape {pop.shape}")
    m, n = pop.shape
    out = np.empty((m, 2), dtype=np.int64)
    if problem.kind is ProblemKind.ONE_MIN_MAX:
        ones = pop.sum(axis=1, dtype=np.int64)
        out[:, 0] = n - ones
        out[:, 1] = ones
    else:
        zero = pop == 0
        has_zero = zero.any(axis=1)
        out[:, 0] = np.where(has_zero, zero.argmax(axis=1), n)
        one_rev = pop[:, ::-1] == 1
        has_one = one_rev.any(axis=1)
        out[:, 1] = np.where(has_one, one_rev.argmax(axis=1), n)
    return out


def evaluate(problem: Problem, x) -> ObjectiveVector:
    """Objective vector of a single bitstring."""
    x = np.asarray(x)
    if x.ndim != 1 or x.shape[0] != problem.n:
        raise ValueError(f"bitstring length {x.shape} does not match n={problem.n}")
    f1, f2 = evaluate_many(problem, x[None, :])[0]
    return ObjectiveVector(int(f1), int(f2))


def pareto_front(problem: Problem) -> frozenset[ObjectiveVector]:
    """``{(k, n - k) | k in 0..n}``; identical for both benchmarks."""
    n = problem.n
    return frozenset(ObjectiveVector(k, n - k) for k in range(n + 1))


def is_pareto_optimal(problem: Problem, x) -> bool:
    """OneMinMax: always. LOTZ: iff ``x`` has the form 1^k 0^(n-k)."""
    f1, f2 = evaluate(problem, x)
    return f1 + f2 == problem.n


def pareto_optimal_mask(problem: Problem, objectives: np.ndarray) -> np.ndarray:
    objectives = np.asarray(objectives)
    return objectives[:, 0] + objectives[:, 1] == problem.n
