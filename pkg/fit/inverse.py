"""Inversion of fitted quadratics back to incomes"""
import logging

import numpy as np

from ingest.errors import SeriesValidationError
from ingest.models import DecileSeries, SeriesMeta
from ingest.validation import validate_series

from .errors import InversionError
from .models import PERCENT_GRID, Polynomial

logger = logging.getLogger(__name__)

# Below this the x^2 term is treated as absent and the model solved linearly
DEGENERATE_LEADING = 1e-300


def parabola_minimum(poly: Polynomial) -> float:
    """Lowest percent an upward-opening quadratic reaches, c - b^2/(4a)"""
    c, b, a = poly.coeffs
    return c - b * b / (4 * a)


def invert_decreasing_quadratic(poly: Polynomial, p):
    """
    Income x at which the fitted quadratic equals p, on its decreasing branch.

    Returns the root (-b - sqrt(b^2 - 4a(c - p))) / (2a), computed as
    2(c - p) / (-b + sqrt(...)) when b <= 0 to avoid cancellation. The
    result may be negative (extrapolation below the data, e.g. wealth).
    Accepts a scalar or an array of levels.

    Raises:
        InversionError: p below the parabola's minimum, or a degenerate model
    """
    if poly.degree != 2:
        raise InversionError(f"inversion needs a quadratic, got degree {poly.degree}")

    c, b, a = poly.coeffs
    levels = np.asarray(p, dtype=float)

    if abs(a) <= DEGENERATE_LEADING:
        if b == 0:
            raise InversionError("constant model cannot be inverted")
        x = (levels - c) / b
    else:
        disc = b * b - 4 * a * (c - levels)
        if np.any(disc < 0):
            worst = float(np.min(levels)) if a > 0 else float(np.max(levels))
            raise InversionError(
                f"p={worst:g} lies outside the range of the quadratic "
                f"(extremum {parabola_minimum(poly):.6g})",
                p=worst,
            )
        root = np.sqrt(disc)
        if b <= 0:
            denom = root - b
            with np.errstate(divide="ignore", invalid="ignore"):
                x = np.where(denom > 0, 2 * (c - levels) / denom, -b / (2 * a))
        else:
            x = (-b - root) / (2 * a)

    return float(x) if x.ndim == 0 else x


def reconstruct_series_from_fit(poly: Polynomial, meta: SeriesMeta) -> DecileSeries:
    """
    Synthetic deciles whose complementary CDF lies exactly on poly.

    Decile i gets the income at which poly equals 100 - 10*i.
    """
    values = []
    for level in PERCENT_GRID:
        try:
            values.append(invert_decreasing_quadratic(poly, level))
        except InversionError as e:
            raise InversionError(f"cannot reconstruct decile at p={level:g}: {e}", p=level) from e

    series = DecileSeries(**meta.model_dump(), values=tuple(values))
    try:
        return validate_series(series)
    except SeriesValidationError as e:
        raise InversionError(f"reconstructed deciles are not increasing: {e}") from e
