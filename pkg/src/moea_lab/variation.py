"""One-bit mutation and standard bit-wise mutation with rate 1/n."""

from __future__ import annotations

import math

import numpy as np

from moea_lab.core import RandomSource


def one_bit_mutation(x, rng: RandomSource) -> np.ndarray:
    """Copy of ``x`` with exactly one uniformly chosen bit flipped."""
    y = np.array(x, dtype=np.uint8)
    y[rng.integer(0, y.shape[0])] ^= 1
    return y


def bitwise_mutation(x, rng: RandomSource) -> np.ndarray:
    """Copy of ``x`` where each bit flips independently with probability 1/n."""
    y = np.array(x, dtype=np.uint8)
    n = y.shape[0]
    if n < 1:
        raise ValueError("bit-wise mutation needs n >= 1")
    y ^= (rng.generator.random(n) < 1.0 / n).astype(np.uint8)
    return y


def bernoulli_positions(rng: RandomSource, total: int, p: float) -> np.ndarray:
    """Indices in ``range(total)`` of successes of ``total`` iid Bernoulli(p) trials.

    Samples the geometric gaps between successes instead of every trial; the
    law is identical to drawing each trial separately.
    """
    found = []
    last = -1
    mean = total * p
    while True:
        batch = int(mean + 6.0 * math.sqrt(mean) + 16)
        hits = last + np.cumsum(rng.generator.geometric(p, size=batch))
        if hits[-1] >= total:
            found.append(hits[hits < total])
            break
        found.append(hits)
        last = int(hits[-1])
    return np.concatenate(found)


def mutate_population(population: np.ndarray, bitwise: bool, rng: RandomSource) -> np.ndarray:
    """Mutate every row of ``population`` once, returning a new array."""
    offspring = np.array(population, dtype=np.uint8, copy=True)
    m, n = offspring.shape
    if bitwise:
        flat = offspring.reshape(-1)
        flat[bernoulli_positions(rng, m * n, 1.0 / n)] ^= 1
    else:
        cols = rng.generator.integers(0, n, size=m)
        offspring[np.arange(m), cols] ^= 1
    return offspring
