"""Decile statistics of a population"""
from typing import Sequence

import numpy as np

from ingest.models import DECILE_COUNT, DecileSeries, SeriesMeta, Statistic
from ingest.validation import validate_series


def decile_blocks(n: int) -> list[tuple[int, int]]:
    """Half-open index ranges of the ten blocks: block k is [floor(kn/10), floor((k+1)n/10))"""
    return [
        (k * n // DECILE_COUNT, (k + 1) * n // DECILE_COUNT)
        for k in range(DECILE_COUNT)
    ]


def compute_deciles(
    incomes: Sequence[float], meta: SeriesMeta
) -> tuple[DecileSeries, DecileSeries]:
    """
    Mean and upper-limit decile series of a population.

    Sorts ascending, splits into ten consecutive blocks, and reports each
    block's mean and maximum. meta.statistic is overridden per output.

    Raises:
        ValueError: fewer than ten incomes
        SeriesValidationError: ties that leave either series non-increasing
    """
    values = np.sort(np.asarray(incomes, dtype=float))
    if values.size < DECILE_COUNT:
        raise ValueError(f"need at least {DECILE_COUNT} incomes, got {values.size}")

    blocks = [values[start:stop] for start, stop in decile_blocks(values.size)]
    base = meta.model_dump(exclude={"statistic"})

    mean_series = DecileSeries(
        **base,
        statistic=Statistic.MEAN_INCOME,
        values=tuple(float(block.mean()) for block in blocks),
    )
    upper_series = DecileSeries(
        **base,
        statistic=Statistic.UPPER_LIMIT,
        values=tuple(float(block.max()) for block in blocks),
    )
    return validate_series(mean_series), validate_series(upper_series)
