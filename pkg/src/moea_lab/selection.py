"""Parent selection schemes and the rank/crowding survival selection."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from moea_lab.core import RandomSource
from moea_lab.crowding import INF_KEY, CrowdingDistance, crowding_keys, key_to_distance
from moea_lab.ranking import FrontPartition, fast_nondominated_sort, nondominated_ranks


class SelectionScheme(str, enum.Enum):
    EACH_PARENT_ONCE = "EachParentOnce"
    UNIFORM_RANDOM = "UniformRandom"
    INDEPENDENT_TOURNAMENTS = "IndependentTournaments"
    TWO_PERMUTATION_TOURNAMENTS = "TwoPermutationTournaments"

    @property
    def letter(self) -> str:
        """Short label A-D used in variant tables and figures."""
        return "ABCD"[list(SelectionScheme).index(self)]

    @property
    def is_tournament(self) -> bool:
        return self in (SelectionScheme.INDEPENDENT_TOURNAMENTS, SelectionScheme.TWO_PERMUTATION_TOURNAMENTS)

    @classmethod
    def parse(cls, text: str) -> "SelectionScheme":
        key = text.strip().lower().replace("-", "").replace("_", "").replace(" ", "")
        for scheme in cls:
            if key in (scheme.value.lower(), scheme.letter.lower()):
                return scheme
        raise ValueError(f"unknown selection scheme {text!r}")


class Comparison(enum.Enum):
    FIRST_BETTER = "FirstBetter"
    SECOND_BETTER = "SecondBetter"
    TIE = "Tie"


@dataclass
class ScoredPopulation:
    """Objective values with non-domination ranks and per-front crowding keys.

    ``keys[i] / scales[i]`` is the exact crowding distance of ``i`` inside its
    front. Only the first ``crowded_fronts`` fronts carry distances.
    """

    objectives: np.ndarray
    ranks: np.ndarray
    keys: np.ndarray
    scales: np.ndarray
    crowded_fronts: int
    individuals: np.ndarray | None = None
    _partition: FrontPartition | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.ranks)

    @property
    def partition(self) -> FrontPartition:
        if self._partition is None:
            self._partition = fast_nondominated_sort(self.objectives)
        return self._partition

    @property
    def complete(self) -> bool:
        return self.crowded_fronts >= int(self.ranks.max())

    def distance(self, i: int) -> CrowdingDistance:
        if self.ranks[i] > self.crowded_fronts:
            raise ValueError(f"no crowding distance was computed for front {self.ranks[i]}")
        return key_to_distance(self.keys[i], self.scales[i])

    @property
    def distances(self) -> list[CrowdingDistance | None]:
        return [self.distance(i) if self.ranks[i] <= self.crowded_fronts else None for i in range(len(self))]


def score(
    objectives,
    rng: RandomSource | None,
    individuals: np.ndarray | None = None,
    stable: bool = False,
    limit: int | None = None,
) -> ScoredPopulation:
    """Rank ``objectives`` and compute crowding distances front by front.

    With ``limit`` set, crowding stops after the first front whose cumulative
    size reaches ``limit``, which is all that survival selection consults.
    """
    objectives = np.asarray(objectives, dtype=np.int64).reshape(-1, 2)
    ranks = nondominated_ranks(objectives)
    m = len(ranks)
    keys = np.zeros(m, dtype=np.int64)
    scales = np.ones(m, dtype=np.int64)
    n_fronts = int(ranks.max())
    if n_fronts == 1:
        members_by_front = [np.arange(m)]
    else:
        order = np.argsort(ranks, kind="stable")
        bounds = np.searchsorted(ranks[order], np.arange(1, n_fronts + 2))
        members_by_front = [order[bounds[k] : bounds[k + 1]] for k in range(n_fronts)]
    done = 0
    covered = 0
    for members in members_by_front:
        front_keys, scale = crowding_keys(objectives[members], rng, stable)
        keys[members] = front_keys
        scales[members] = scale
        done += 1
        covered += len(members)
        if limit is not None and covered >= limit:
            break
    return ScoredPopulation(objectives, ranks, keys, scales, done, individuals)


def total_order_better(i: int, j: int, scored: ScoredPopulation) -> Comparison:
    """Lower rank wins; within a rank the larger crowding distance wins."""
    ri, rj = scored.ranks[i], scored.ranks[j]
    if ri != rj:
        return Comparison.FIRST_BETTER if ri < rj else Comparison.SECOND_BETTER
    di, dj = scored.distance(i), scored.distance(j)
    if di == dj:
        return Comparison.TIE
    return Comparison.FIRST_BETTER if di > dj else Comparison.SECOND_BETTER


def _tournaments(first: np.ndarray, second: np.ndarray, scored: ScoredPopulation, rng: RandomSource) -> np.ndarray:
    r1, r2 = scored.ranks[first], scored.ranks[second]
    k1, k2 = scored.keys[first], scored.keys[second]
    same = r1 == r2
    first_better = (r1 < r2) | (same & (k1 > k2))
    tie = same & (k1 == k2)
    coin = rng.generator.random(len(first)) < 0.5
    return np.where(first_better | (tie & coin), first, second)


def select_parents(scheme: SelectionScheme, scored: ScoredPopulation, rng: RandomSource) -> np.ndarray:
    """Indices of the ``N = len(scored)`` parents to mutate.

    Raises:
        ValueError: for ``N < 2`` or an odd ``N`` with two-permutation tournaments.
    """
    scheme = SelectionScheme(scheme)
    size = len(scored)
    if size < 2:
        raise ValueError("parent selection needs a population of at least 2")
    if scheme is SelectionScheme.EACH_PARENT_ONCE:
        return np.arange(size)
    if scheme is SelectionScheme.UNIFORM_RANDOM:
        return rng.generator.integers(0, size, size=size)
    if not scored.complete:
        raise ValueError("tournaments need crowding distances on every front")
    if scheme is SelectionScheme.INDEPENDENT_TOURNAMENTS:
        first, second = rng.distinct_pairs(size, size)
        return _tournaments(first, second, scored, rng)
    if size % 2:
        raise ValueError(f"two-permutation tournaments need an even population size, got {size}")
    winners = []
    for _ in range(2):
        perm = rng.permutation(size)
        winners.append(_tournaments(perm[0::2], perm[1::2], scored, rng))
    return np.concatenate(winners)


def survival_select(combined: ScoredPopulation, size: int, rng: RandomSource) -> np.ndarray:
    """Sorted indices of the ``size`` survivors of ``combined``.

    Whole fronts are kept while they fit; the critical front is cut by
    descending crowding distance with ties at the cut broken uniformly.
    """
    total = len(combined)
    if size > total:
        raise ValueError(f"cannot keep {size} individuals out of {total}")
    if size == total:
        return np.arange(total)
    perm = rng.permutation(total)
    ranks = combined.ranks[perm]
    keys = np.where(ranks <= combined.crowded_fronts, combined.keys[perm], -INF_KEY)
    # lexsort: last key is primary
    order = np.lexsort((-keys, ranks))
    chosen = perm[order[:size]]
    critical = int(combined.ranks[chosen].max())
    if critical > combined.crowded_fronts:
        raise ValueError(f"front {critical} needs crowding distances for survival selection")
    return np.sort(chosen)
