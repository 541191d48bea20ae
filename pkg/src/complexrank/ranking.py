"""Average (tied) ranks for numerical data."""

from __future__ import annotations

import math
from typing import Sequence


def ranks(values: Sequence[float]) -> list[float]:
    """Rank values ascending with 1-based positions, averaging over ties.

    Equal values (exact float equality) occupy a run of consecutive sorted
    positions and all receive the arithmetic mean of that run. The result
    follows the input order, so rank i belongs to values[i].
    """
    vals = [float(v) for v in values]
    if not vals:
        raise ValueError("ranks() needs at least one value")
    for v in vals:
        if not math.isfinite(v):
            raise ValueError(f"ranks() requires finite values, got {v!r}")
    n = len(vals)
    order = sorted(range(n), key=vals.__getitem__)
    out = [0.0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and vals[order[j + 1]] == vals[order[i]]:
            j += 1
        # positions are 1-based, the mean of i+1 .. j+1
        avg = (i + j + 2) / 2
        for p in range(i, j + 1):
            out[order[p]] = avg
        i = j + 1
    return out
