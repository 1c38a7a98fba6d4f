"""Order statistics for experiment summaries."""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

QUARTILE_RULE = "linear interpolation between closest ranks (numpy percentile method='linear')"


class Summary(NamedTuple):
    min: float
    q1: float
    median: float
    q3: float
    max: float


def aggregate(values: Sequence[float]) -> Summary:
    """Minimum, quartiles and maximum of ``values``.

    Raises:
        ValueError: if ``values`` is empty.
    """
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        raise ValueError("cannot aggregate an empty sample")
    q = np.percentile(data, [0, 25, 50, 75, 100], method="linear")
    return Summary(*(float(v) for v in q))
