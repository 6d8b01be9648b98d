"""Pydantic models for fitted distributions"""
import math
from enum import Enum

import numpy as np
from numpy.polynomial.polynomial import polyval
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, field_validator, model_validator


MAX_DEGREE = 5
PERCENT_GRID: tuple[float, ...] = tuple(float(100 - 10 * i) for i in range(10))


class Transform(str, Enum):
    """Coordinates the polynomial is fitted in"""
    LINEAR = "linear"
    LOGLOG = "loglog"


class EmpiricalCdf(BaseModel):
    """Complementary CDF on deciles: (income, percent with income >= x) pairs"""
    model_config = ConfigDict(frozen=True)

    points: tuple[tuple[float, float], ...]

    @model_validator(mode="after")
    def _check_grid(self) -> "EmpiricalCdf":
        if tuple(p for _, p in self.points) != PERCENT_GRID:
            raise ValueError("percent values must be exactly 100, 90, ..., 10")
        xs = [x for x, _ in self.points]
        if any(not a < b for a, b in zip(xs, xs[1:])):
            raise ValueError("income values must be strictly increasing")
        return self

    @property
    def xs(self) -> np.ndarray:
        return np.array([x for x, _ in self.points])

    @property
    def ps(self) -> np.ndarray:
        return np.array([p for _, p in self.points])


class Polynomial(BaseModel):
    """Polynomial with coefficients in ascending power order (coeffs[0] is the constant)"""
    model_config = ConfigDict(frozen=True)

    coeffs: tuple[float, ...]

    @field_validator("coeffs")
    @classmethod
    def _check_coeffs(cls, coeffs: tuple[float, ...]) -> tuple[float, ...]:
        degree = len(coeffs) - 1
        if not 1 <= degree <= MAX_DEGREE:
            raise ValueError(f"degree must be between 1 and {MAX_DEGREE}, got {degree}")
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError("coefficients must be finite")
        return coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def quadratic(cls, a: float, b: float, c: float) -> "Polynomial":
        """Build a*x^2 + b*x + c"""
        return cls(coeffs=(c, b, a))


class Standardization(BaseModel):
    """Affine map z = (x - x_mean) / x_scale used while solving"""
    model_config = ConfigDict(frozen=True)

    x_mean: float
    x_scale: PositiveFloat


class FitConfig(BaseModel):
    """Degree and coordinate transform of a fit"""
    model_config = ConfigDict(frozen=True)

    degree: int = 2
    transform: Transform = Transform.LINEAR

    @field_validator("degree")
    @classmethod
    def _check_degree(cls, degree: int) -> int:
        if not 1 <= degree <= MAX_DEGREE:
            raise ValueError(f"degree {degree} outside the supported range 1..{MAX_DEGREE}")
        return degree


class FitResult(BaseModel):
    """
    Least-squares fit with its goodness-of-fit summary.

    poly holds raw-x coefficients; for log-log fits they act on ln x and
    predict ln p. residuals, ss_res, ss_tot and r_squared are measured in
    the coordinates the fit was made in.
    """
    model_config = ConfigDict(frozen=True)

    poly: Polynomial
    standardized_coeffs: tuple[float, ...]
    residuals: tuple[float, ...]
    ss_res: float = Field(ge=0)
    ss_tot: float = Field(ge=0)
    r_squared: float = Field(le=1)
    standardization: Standardization
    transform: Transform = Transform.LINEAR

    def predict(self, x) -> np.ndarray:
        """Fitted percent at raw income x, undoing the log transform when present"""
        x = np.asarray(x, dtype=float)
        if self.transform is Transform.LOGLOG:
            return np.exp(polyval(np.log(x), self.poly.coeffs))
        return polyval(x, self.poly.coeffs)
