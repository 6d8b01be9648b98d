"""Inequality summaries"""
from typing import Sequence

import numpy as np


def gini(incomes: Sequence[float]) -> float:
    """
    Population Gini coefficient, sum_ij |x_i - x_j| / (2 n^2 mean).

    Evaluated in O(n log n) through the sorted-rank identity
    sum_ij |x_i - x_j| = 2 * sum_i (2i - n - 1) x_(i), i = 1..n.

    Raises:
        ValueError: empty input, negative incomes, or nonpositive mean
    """
    x = np.sort(np.asarray(incomes, dtype=float))
    n = x.size
    if n == 0:
        raise ValueError("gini needs at least one income")
    if x[0] < 0:
        raise ValueError("gini is defined for nonnegative incomes only")

    mean = x.mean()
    if not mean > 0:
        raise ValueError("gini needs a positive mean income")
    if x[0] == x[-1]:
        return 0.0

    ranks = np.arange(1, n + 1, dtype=float)
    return float(np.sum((2 * ranks - n - 1) * x) / (n * n * mean))


def lorenz_curve(incomes: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative population share against cumulative income share, both starting at 0"""
    x = np.sort(np.asarray(incomes, dtype=float))
    n = x.size
    if n == 0 or not x.sum() > 0:
        raise ValueError("Lorenz curve needs a positive total income")
    population = np.arange(0, n + 1) / n
    share = np.concatenate(([0.0], np.cumsum(x) / x.sum()))
    return population, share
