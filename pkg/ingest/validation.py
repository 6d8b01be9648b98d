"""Decile series validation and nominal-to-real conversion"""
import logging
import math

from .errors import MissingCpiYearError, SeriesValidationError
from .models import DECILE_COUNT, CpiSeries, DecileSeries

logger = logging.getLogger(__name__)


def validate_series(series: DecileSeries) -> DecileSeries:
    """
    Check the decile invariants and return the series unchanged.

    Negative values are accepted for every income kind; only the count,
    finiteness and strict ordering are enforced.

    Raises:
        SeriesValidationError: wrong count, non-finite or non-increasing values
    """
    values = series.values
    if len(values) != DECILE_COUNT:
        raise SeriesValidationError(
            f"{series.label}: expected {DECILE_COUNT} decile values, got {len(values)}"
        )

    for position, value in enumerate(values, start=1):
        if not math.isfinite(value):
            raise SeriesValidationError(
                f"{series.label}: d{position} is not finite ({value})"
            )

    for position in range(1, DECILE_COUNT):
        if not values[position - 1] < values[position]:
            raise SeriesValidationError(
                f"{series.label}: values must be strictly increasing, "
                f"d{position}={values[position - 1]} >= d{position + 1}={values[position]}"
            )

    return series


def deflate_to_real(series: DecileSeries, cpi: CpiSeries) -> DecileSeries:
    """
    Convert nominal values to base-year prices.

    Every value is multiplied by index[base_year] / index[series.year];
    the currency label gains the base year as a suffix (EUR -> EUR2009).
    """
    if series.year not in cpi.index:
        raise MissingCpiYearError(
            f"CPI series has no index for {series.year} (needed by {series.label})"
        )

    ratio = cpi.index[cpi.base_year] / cpi.index[series.year]
    logger.debug(f"Deflating {series.label} by {ratio:.6g} to {cpi.base_year} prices")

    return series.model_copy(update={
        "values": tuple(value * ratio for value in series.values),
        "currency": f"{series.currency}{cpi.base_year}",
    })
