"""Non-dominated sorting of bi-objective values into fronts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FrontPartition:
    """Fronts ``F1, F2, ...`` as index arrays plus the 1-based rank of every index."""

    fronts: tuple[np.ndarray, ...]
    rank_of: np.ndarray

    def __len__(self) -> int:
        return len(self.fronts)

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(int(i) for i in f) for f in self.fronts]


def _as_objectives(objectives) -> np.ndarray:
    objectives = np.asarray(objectives, dtype=np.int64)
    if objectives.size == 0:
        raise ValueError("non-dominated sorting needs a non-empty population")
    objectives = objectives.reshape(-1, 2)
    if objectives.min() < 0:
        raise ValueError("objective values must be non-negative integers")
    return objectives


def _distinct(objectives: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distinct rows in ascending (f1, f2) order and the row -> distinct index map."""
    width = int(objectives[:, 1].max()) + 1
    codes = objectives[:, 0] * width + objectives[:, 1]
    unique, inverse = np.unique(codes, return_inverse=True)
    values = np.stack([unique // width, unique % width], axis=1)
    return values, inverse.reshape(-1)


def _partition(rank: np.ndarray) -> FrontPartition:
    order = np.argsort(rank, kind="stable")
    bounds = np.searchsorted(rank[order], np.arange(1, rank.max() + 2))
    fronts = tuple(order[bounds[k] : bounds[k + 1]] for k in range(len(bounds) - 1))
    return FrontPartition(fronts=fronts, rank_of=rank)


def fast_nondominated_sort(objectives) -> FrontPartition:
    """Partition ``objectives`` into fronts ``F1, F2, ...`` by domination counting.

    Every individual gets the number of individuals strictly dominating it
    and the set it strictly dominates; zero-count individuals form ``F1``,
    and discounting each finished front from the counters yields the next.
    Identical objective vectors never strictly dominate each other, so they
    always share a front.

    Raises:
        ValueError: if ``objectives`` is empty.
    """
    objectives = _as_objectives(objectives)
    f1, f2 = objectives[:, 0], objectives[:, 1]
    weak = (f1[:, None] >= f1[None, :]) & (f2[:, None] >= f2[None, :])
    # dominates[i, j]: i strictly dominates j
    dominates = weak & ~weak.T
    counts = dominates.sum(axis=0)
    rank = np.zeros(len(objectives), dtype=np.int64)
    current = np.flatnonzero(counts == 0)
    k = 1
    while current.size:
        rank[current] = k
        counts[current] = -1
        counts -= dominates[current].sum(axis=0)
        current = np.flatnonzero(counts == 0)
        k += 1
    return _partition(rank)


def nondominated_ranks(objectives) -> np.ndarray:
    """1-based front index of every row; the engines' fast path.

    Works on the distinct objective vectors sorted by descending ``f1`` then
    descending ``f2``: in that order a vector is non-dominated among the
    remaining ones iff its ``f2`` exceeds every earlier ``f2``. Peeling one
    front per pass gives the same partition as :func:`fast_nondominated_sort`.
    """
    objectives = _as_objectives(objectives)
    values, inverse = _distinct(objectives)
    remaining = np.arange(len(values))[::-1]
    f2 = values[remaining, 1]
    rank = np.empty(len(values), dtype=np.int64)
    k = 1
    while remaining.size:
        best_before = np.empty_like(f2)
        best_before[0] = -1
        np.maximum.accumulate(f2[:-1], out=best_before[1:])
        front = f2 > best_before
        rank[remaining[front]] = k
        remaining, f2 = remaining[~front], f2[~front]
        k += 1
    return rank[inverse]
