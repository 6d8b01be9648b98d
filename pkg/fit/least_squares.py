"""Complementary CDF construction and least-squares polynomial fitting"""
import logging
from typing import Iterable, Sequence

import numpy as np

from ingest.models import DecileSeries
from ingest.validation import validate_series

from .errors import DomainError, FitError, SingularSystemError
from .models import (
    MAX_DEGREE,
    PERCENT_GRID,
    EmpiricalCdf,
    FitConfig,
    FitResult,
    Polynomial,
    Transform,
)
from .polynomial import back_transform_coefficients, standardize

logger = logging.getLogger(__name__)

# Exact fits of constant data score 1 when SSres stays below this times n
EXACT_FIT_TOLERANCE = 1e-12


def build_cdf(series: DecileSeries) -> EmpiricalCdf:
    """Pair decile i with the share of the population at or above it: 100, 90, ..., 10"""
    validate_series(series)
    return EmpiricalCdf(points=tuple(zip(series.values, PERCENT_GRID)))


def r_squared(observed: Sequence[float], fitted: Sequence[float]) -> float:
    """
    Coefficient of determination, 1 - SSres/SStot.

    Constant observations fitted exactly score 1; fitted inexactly they
    have no defined score and raise FitError.
    """
    observed = np.asarray(observed, dtype=float)
    fitted = np.asarray(fitted, dtype=float)
    if observed.shape != fitted.shape or observed.size < 2:
        raise FitError("r_squared needs two equal-length sequences of at least 2 values")

    ss_res = float(np.sum((observed - fitted) ** 2))
    ss_tot = float(np.sum((observed - observed.mean()) ** 2))

    if ss_tot == 0:
        if ss_res <= EXACT_FIT_TOLERANCE * observed.size:
            return 1.0
        raise FitError(f"constant observations fitted inexactly (SSres={ss_res:.3g})")
    return 1.0 - ss_res / ss_tot


def fit_points(xs: Sequence[float], ps: Sequence[float], config: FitConfig) -> FitResult:
    """
    Least-squares polynomial through arbitrary (x, p) points.

    The normal equations are built on standardized abscissae, solved by
    LU with partial pivoting, refined once against the residual, and the
    coefficients mapped back to raw x.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ps, dtype=float)
    if x.shape != y.shape:
        raise FitError(f"got {x.size} abscissae but {y.size} ordinates")
    if config.degree + 1 > x.size:
        raise FitError(f"degree {config.degree} needs at least {config.degree + 1} points, got {x.size}")

    if config.transform is Transform.LOGLOG:
        if np.any(x <= 0) or np.any(y <= 0):
            raise DomainError("log-log fit needs strictly positive incomes and percents")
        x, y = np.log(x), np.log(y)

    z, standardization = standardize(x)
    vander = np.vander(z, config.degree + 1, increasing=True)
    if np.linalg.matrix_rank(vander) < config.degree + 1:
        raise SingularSystemError(f"normal equations are singular at degree {config.degree}")

    normal = vander.T @ vander
    try:
        coeffs_z = np.linalg.solve(normal, vander.T @ y)
        coeffs_z = coeffs_z + np.linalg.solve(normal, vander.T @ (y - vander @ coeffs_z))
    except np.linalg.LinAlgError as e:
        raise SingularSystemError(f"normal equations are singular at degree {config.degree}") from e

    fitted = vander @ coeffs_z
    residuals = y - fitted
    ss_res = float(residuals @ residuals)
    ss_tot = float(np.sum((y - y.mean()) ** 2))

    return FitResult(
        poly=Polynomial(coeffs=back_transform_coefficients(coeffs_z, standardization)),
        standardized_coeffs=tuple(float(c) for c in coeffs_z),
        residuals=tuple(float(r) for r in residuals),
        ss_res=ss_res,
        ss_tot=ss_tot,
        r_squared=r_squared(y, fitted),
        standardization=standardization,
        transform=config.transform,
    )


def fit_polynomial(cdf: EmpiricalCdf, config: FitConfig) -> FitResult:
    """Fit the configured polynomial to a decile CDF"""
    result = fit_points(cdf.xs, cdf.ps, config)
    logger.debug(
        f"Fitted degree {config.degree} ({config.transform.value}): "
        f"R2={result.r_squared:.6f}, SSres={result.ss_res:.3g}"
    )
    return result


def fit_loglog(cdf: EmpiricalCdf, degree: int) -> FitResult:
    """Fit ln p as a polynomial in ln x"""
    return fit_polynomial(cdf, FitConfig(degree=degree, transform=Transform.LOGLOG))


def degree_sweep(
    cdf: EmpiricalCdf,
    degrees: Iterable[int] = range(1, MAX_DEGREE + 1),
    transform: Transform = Transform.LINEAR,
) -> dict[int, FitResult]:
    """Fit the same CDF at several degrees to compare goodness of fit"""
    return {
        degree: fit_polynomial(cdf, FitConfig(degree=degree, transform=transform))
        for degree in degrees
    }
