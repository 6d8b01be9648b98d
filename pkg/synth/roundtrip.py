"""Fit -> deciles -> refit round-trip of published quadratics"""
import logging
from dataclasses import dataclass, field

import numpy as np

from fit.errors import FitError
from fit.inverse import invert_decreasing_quadratic, parabola_minimum, reconstruct_series_from_fit
from fit.least_squares import build_cdf, fit_points, fit_polynomial
from fit.models import PERCENT_GRID, FitConfig, Polynomial
from ingest.models import IncomeKind, SeriesMeta, Statistic

logger = logging.getLogger(__name__)

ROUNDTRIP_DEGREE = 2
_PLACEHOLDER_META = SeriesMeta(
    country="roundtrip",
    year=0,
    currency="units",
    statistic=Statistic.UPPER_LIMIT,
    income_kind=IncomeKind.DISPOSABLE,
)


@dataclass
class RoundtripReport:
    """Outcome of refitting the deciles reconstructed from a polynomial"""
    max_coeff_rel_err: float
    refit_r_squared: float
    passed: bool
    refit: Polynomial
    levels_used: tuple[float, ...] = field(default=PERCENT_GRID)

    @property
    def truncated(self) -> bool:
        """True when some grid levels lay below the parabola and were skipped"""
        return len(self.levels_used) < len(PERCENT_GRID)


def attainable_levels(poly: Polynomial) -> tuple[float, ...]:
    """Grid levels the quadratic reaches on its decreasing branch"""
    if poly.coeffs[2] <= 0:
        return PERCENT_GRID
    floor = parabola_minimum(poly)
    return tuple(level for level in PERCENT_GRID if level >= floor)


def max_relative_error(reference: Polynomial, candidate: Polynomial) -> float:
    """Largest |candidate_k - reference_k| / |reference_k| over the coefficients"""
    ref = np.asarray(reference.coeffs)
    cand = np.asarray(candidate.coeffs)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(ref != 0, np.abs(cand - ref) / np.abs(ref), np.abs(cand - ref))
    return float(np.max(rel))


def roundtrip_check(poly: Polynomial, tolerance: float, meta: SeriesMeta = _PLACEHOLDER_META) -> RoundtripReport:
    """
    Reconstruct deciles from poly, refit a quadratic, and compare coefficients.

    When the printed (rounded) coefficients put the parabola's minimum
    above some grid levels, those levels are dropped and the refit uses
    the remaining points; the report lists the levels used.

    Raises:
        FitError: inversion or refit failure
    """
    config = FitConfig(degree=ROUNDTRIP_DEGREE)
    levels = attainable_levels(poly)

    if levels == PERCENT_GRID:
        cdf = build_cdf(reconstruct_series_from_fit(poly, meta))
        result = fit_polynomial(cdf, config)
    else:
        if len(levels) < ROUNDTRIP_DEGREE + 2:
            raise FitError(f"only {len(levels)} grid levels are attainable, too few to refit")
        logger.warning(
            f"⚠️  Parabola minimum {parabola_minimum(poly):.4g} lies above "
            f"p={min(PERCENT_GRID):g}; refitting on {len(levels)} levels"
        )
        xs = invert_decreasing_quadratic(poly, levels)
        result = fit_points(xs, levels, config)

    error = max_relative_error(poly, result.poly)
    return RoundtripReport(
        max_coeff_rel_err=error,
        refit_r_squared=result.r_squared,
        passed=error <= tolerance,
        refit=result.poly,
        levels_used=levels,
    )
