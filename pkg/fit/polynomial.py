"""Polynomial evaluation and the standardize/back-transform pair"""
from math import comb
from typing import Sequence

import numpy as np
from numpy.polynomial.polynomial import polyval

from .errors import DegenerateAbscissaeError
from .models import Polynomial, Standardization


def evaluate_polynomial(poly: Polynomial, x):
    """Horner evaluation of sum(coeffs[k] * x**k); scalars in, scalars out"""
    result = polyval(np.asarray(x, dtype=float), poly.coeffs)
    return float(result) if np.ndim(result) == 0 else result


def standardize(xs: Sequence[float]) -> tuple[np.ndarray, Standardization]:
    """
    Center and scale abscissae: z = (x - mean) / population std.

    Raises:
        DegenerateAbscissaeError: fewer than two values, or all values equal
    """
    x = np.asarray(xs, dtype=float)
    if x.size < 2 or np.all(x == x[0]):
        raise DegenerateAbscissaeError("abscissae need at least two distinct values")

    mean = float(np.mean(x))
    scale = float(np.std(x))
    z = (x - mean) / scale
    return z, Standardization(x_mean=mean, x_scale=scale)


def back_transform_coefficients(coeffs_z: Sequence[float], s: Standardization) -> tuple[float, ...]:
    """
    Rewrite a polynomial in z = (x - x_mean) / x_scale as one in x.

    Expands c_k * ((x - m) / s)^k binomially; the powers are taken as
    (-m/s)^(k-j) * s^(-j) so raw lira-scale abscissae do not overflow.
    """
    ratio = -s.x_mean / s.x_scale
    inv_scale = 1.0 / s.x_scale
    coeffs_x = [0.0] * len(coeffs_z)

    for k, c in enumerate(coeffs_z):
        if c == 0:
            continue
        for j in range(k + 1):
            coeffs_x[j] += c * comb(k, j) * ratio ** (k - j) * inv_scale ** j

    return tuple(coeffs_x)
