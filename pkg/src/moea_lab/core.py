"""Genomes, objective vectors, dominance, and the seeded random source.

A bitstring is a one-dimensional ``numpy`` array of ``uint8`` zeros and ones.
Populations are two-dimensional arrays with one individual per row, and
objective values of a population are ``(m, 2)`` integer arrays. Both
objectives are maximized.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

#: Identity of the pseudo-random generator; written into experiment metadata.
GENERATOR_NAME = f"numpy.random.PCG64 (numpy {np.__version__})"


class ObjectiveVector(NamedTuple):
    f1: int
    f2: int


def weakly_dominates(a, b) -> bool:
    """True iff ``a`` is at least as good as ``b`` in both objectives."""
    return a[0] >= b[0] and a[1] >= b[1]


def strictly_dominates(a, b) -> bool:
    """True iff ``a`` weakly dominates ``b`` and is better in at least one objective."""
    return weakly_dominates(a, b) and (a[0] > b[0] or a[1] > b[1])


def as_bitstring(bits) -> np.ndarray:
    """Copy ``bits`` into a read-only ``uint8`` array, validating the alphabet."""
    x = np.array(bits, dtype=np.uint8)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("a bitstring must be a non-empty one-dimensional sequence")
    if np.any(x > 1):
        raise ValueError("a bitstring may only contain 0 and 1")
    x.setflags(write=False)
    return x


def parse_bitstring(text: str) -> np.ndarray:
    """``"10110"`` -> bitstring."""
    return as_bitstring([int(c) for c in text])


class RandomSource:
    """Seeded PCG64 stream shared by every randomized operation.

    Two instances built from the same seed produce identical draws. An
    instance is owned by one run; never share it between threads.
    """

    def __init__(self, seed: int):
        if seed < 0 or seed >= 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = int(seed)
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in ``[low, high)``."""
        return int(self.generator.integers(low, high))

    def random(self) -> float:
        """Uniform real in ``[0, 1)``."""
        return float(self.generator.random())

    def permutation(self, m: int) -> np.ndarray:
        """Uniform permutation of ``range(m)``."""
        return self.generator.permutation(m)

    def distinct_pair(self, m: int) -> tuple[int, int]:
        """Two different indices from ``range(m)``, uniform over ordered pairs.

        The second index is drawn uniformly from the ``m - 1`` remaining ones.
        """
        if m < 2:
            raise ValueError("a distinct pair needs at least two elements")
        first = self.integer(0, m)
        second = self.integer(0, m - 1)
        if second >= first:
            second += 1
        return first, second

    def distinct_pairs(self, m: int, count: int) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized :meth:`distinct_pair`, ``count`` independent pairs."""
        if m < 2:
            raise ValueError("a distinct pair needs at least two elements")
        first = self.generator.integers(0, m, size=count)
        second = self.generator.integers(0, m - 1, size=count)
        second += second >= first
        return first, second

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed})"
