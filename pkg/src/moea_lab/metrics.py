"""Front coverage measurements."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def _covered_ks(objectives, front) -> set[int]:
    present = {(int(a), int(b)) for a, b in np.asarray(objectives, dtype=np.int64).reshape(-1, 2)}
    return {v[0] for v in front if (v[0], v[1]) in present}


def coverage_ratio(objectives, front) -> Fraction:
    """Fraction of ``front`` values present among ``objectives``."""
    return Fraction(len(_covered_ks(objectives, front)), len(front))


def max_uncovered_gap(objectives, front) -> int:
    """Longest run of consecutive uncovered front values ``(k, n - k)``.

    The front is a path from ``(0, n)`` to ``(n, 0)``; runs do not wrap.
    """
    covered = _covered_ks(objectives, front)
    longest = run = 0
    for k in sorted(v[0] for v in front):
        run = 0 if k in covered else run + 1
        longest = max(longest, run)
    return longest


def first_generation_both_extremes(trace) -> int | None:
    """First generation whose population contains both ``(0, n)`` and ``(n, 0)``."""
    both = np.flatnonzero(np.asarray(trace.has_zero_n) & np.asarray(trace.has_n_zero))
    return int(both[0]) if both.size else None
