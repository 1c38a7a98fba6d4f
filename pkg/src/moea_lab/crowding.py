"""Exact crowding distances.

Within one front every finite distance is ``g1 / r1 + g2 / r2`` where ``g_i``
is the integer gap between an individual's sorted neighbours in objective
``i`` and ``r_i`` is the front's integer range in that objective. Scaling by
``r1 * r2`` turns this into the integer key ``g1 * r2 + g2 * r1``, so
distances inside a front compare exactly as int64 keys. ``crowding_distances``
converts keys back into :class:`fractions.Fraction` values.

A zero range (all values equal in one objective) contributes nothing for that
objective; the first and last individual of that sort still get infinity.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

import numpy as np

from moea_lab.core import RandomSource

INF = math.inf
#: int64 sentinel for an infinite distance; larger than any finite key.
INF_KEY = np.iinfo(np.int64).max

CrowdingDistance = Union[Fraction, float]


def sort_orders(values: np.ndarray, rng: RandomSource | None, stable: bool = False) -> list[np.ndarray]:
    """Ascending sort order of ``values`` for each objective.

    Ties are broken by a fresh uniform permutation per objective, or by index
    when ``stable`` is set (``rng`` may then be None).
    """
    orders = []
    k = len(values)
    for i in range(values.shape[1]):
        if stable:
            orders.append(np.argsort(values[:, i], kind="stable"))
        else:
            perm = rng.permutation(k)
            orders.append(perm[np.argsort(values[perm, i], kind="stable")])
    return orders


def crowding_keys(values, rng: RandomSource | None, stable: bool = False) -> tuple[np.ndarray, int]:
    """Scaled integer crowding keys of one front and the common scale ``r1 * r2``.

    ``key / scale`` is the exact distance; infinite distances carry ``INF_KEY``.
    """
    values = np.asarray(values, dtype=np.int64)
    k = len(values)
    if k == 0:
        raise ValueError("crowding distance of an empty front")
    if k <= 2:
        return np.full(k, INF_KEY, dtype=np.int64), 1
    orders = sort_orders(values, rng, stable)
    ranges = [max(int(values[o[-1], i] - values[o[0], i]), 1) for i, o in enumerate(orders)]
    weights = (ranges[1], ranges[0])
    keys = np.zeros(k, dtype=np.int64)
    boundary = np.zeros(k, dtype=bool)
    for i, order in enumerate(orders):
        v = values[order, i]
        keys[order[1:-1]] += (v[2:] - v[:-2]) * weights[i]
        boundary[order[0]] = boundary[order[-1]] = True
    keys[boundary] = INF_KEY
    return keys, ranges[0] * ranges[1]


def key_to_distance(key: int, scale: int) -> CrowdingDistance:
    return INF if key == INF_KEY else Fraction(int(key), int(scale))


def crowding_distances(front, rng: RandomSource | None, stable: bool = False) -> list[CrowdingDistance]:
    """Crowding distance of every member of ``front`` (a sequence of objective vectors).

    Finite results are reduced fractions; boundary individuals get ``INF``.
    """
    values = np.asarray(front, dtype=np.int64).reshape(-1, 2)
    keys, scale = crowding_keys(values, rng, stable)
    return [key_to_distance(key, scale) for key in keys]
