"""Randomized properties of the fitting and inversion routines"""
import numpy as np
import pytest
from numpy.polynomial.polynomial import polyval

from fit.inverse import invert_decreasing_quadratic, reconstruct_series_from_fit
from fit.least_squares import build_cdf, fit_points, fit_polynomial
from fit.models import PERCENT_GRID, FitConfig
from fit.polynomial import evaluate_polynomial
from synth.roundtrip import attainable_levels

TRIALS = 1000


def _random_problem(rng, degree):
    """
    Ten abscissae spread over one decade, like a decile table, at a scale
    drawn from 1 to 1e9, with coefficients of matching magnitude.
    """
    scale = 10 ** rng.uniform(0, 9)
    xs = scale * (0.1 * np.arange(1, 11) + rng.uniform(-0.04, 0.04, size=10))
    magnitudes = 10 ** rng.uniform(-1, 1, size=degree + 1)
    signs = rng.choice([-1.0, 1.0], size=degree + 1)
    coeffs = magnitudes * signs / scale ** np.arange(degree + 1)
    return xs, coeffs, scale


class TestExactRecovery:

    def test_polynomial_data_is_recovered(self, rng):
        for _ in range(TRIALS):
            degree = int(rng.integers(1, 6))
            xs, coeffs, scale = _random_problem(rng, degree)
            ps = polyval(xs, coeffs)

            result = fit_points(xs, ps, FitConfig(degree=degree))

            powers = scale ** np.arange(degree + 1)
            expected = coeffs * powers
            recovered = np.asarray(result.poly.coeffs) * powers
            assert np.max(np.abs(recovered - expected)) <= 1e-8 * np.max(np.abs(expected))

            magnitude = polyval(xs, np.abs(coeffs))
            assert result.ss_res <= 1e-16 * float(magnitude @ magnitude)
            assert result.r_squared <= 1.0

    def test_geometric_spans_at_low_degree(self, rng):
        for _ in range(200):
            degree = int(rng.integers(1, 3))
            orders = rng.uniform(1, 9)
            xs = np.geomspace(1.0, 10 ** orders, 10)
            scale = xs[-1]
            coeffs = 10 ** rng.uniform(-1, 1, size=degree + 1) * rng.choice([-1.0, 1.0], size=degree + 1)
            coeffs = coeffs / scale ** np.arange(degree + 1)

            result = fit_points(xs, polyval(xs, coeffs), FitConfig(degree=degree))

            powers = scale ** np.arange(degree + 1)
            recovered = np.asarray(result.poly.coeffs) * powers
            expected = coeffs * powers
            assert np.max(np.abs(recovered - expected)) <= 1e-8 * np.max(np.abs(expected))


class TestOptimality:

    def test_residuals_orthogonal_to_basis(self, rng):
        for _ in range(200):
            degree = int(rng.integers(1, 6))
            xs, coeffs, _ = _random_problem(rng, degree)
            ps = polyval(xs, coeffs)
            ps = ps + rng.normal(0, 0.1 * np.std(ps), size=ps.size)

            result = fit_points(xs, ps, FitConfig(degree=degree))
            s = result.standardization
            vander = np.vander((xs - s.x_mean) / s.x_scale, degree + 1, increasing=True)
            residuals = np.asarray(result.residuals)

            bound = 1e-8 * np.linalg.norm(vander, axis=0) * np.linalg.norm(residuals)
            assert np.all(np.abs(vander.T @ residuals) <= bound)

    def test_perturbing_any_coefficient_does_not_improve(self, rng):
        for _ in range(200):
            degree = int(rng.integers(1, 6))
            xs, coeffs, _ = _random_problem(rng, degree)
            ps = polyval(xs, coeffs) + rng.normal(0, 1.0, size=10)

            result = fit_points(xs, ps, FitConfig(degree=degree))
            s = result.standardization
            vander = np.vander((xs - s.x_mean) / s.x_scale, degree + 1, increasing=True)
            best = np.asarray(result.standardized_coeffs)

            for k in range(degree + 1):
                delta = 1e-4 * max(1.0, abs(best[k]))
                for sign in (-1.0, 1.0):
                    moved = best.copy()
                    moved[k] += sign * delta
                    ss = float(np.sum((ps - vander @ moved) ** 2))
                    assert ss >= result.ss_res


class TestInversionIdentity:

    def test_every_published_row(self, published_rows):
        for row in published_rows:
            poly = row.polynomial()
            levels = attainable_levels(poly)
            xs = invert_decreasing_quadratic(poly, np.array(levels))

            for level, x in zip(levels, xs):
                assert evaluate_polynomial(poly, x) == pytest.approx(level, abs=1e-9 * max(1.0, level)), row.label
            assert np.all(np.diff(xs) > 0), row.label

    def test_levels_between_grid_points(self, france_2002):
        levels = np.linspace(100, 10, 91)
        xs = invert_decreasing_quadratic(france_2002, levels)
        np.testing.assert_allclose(evaluate_polynomial(france_2002, xs), levels, atol=1e-7)
        assert np.all(np.diff(xs) > 0)


class TestBackTransform:

    def test_raw_and_standardized_polynomials_agree(self, published_rows):
        for row in published_rows:
            poly = row.polynomial()
            if attainable_levels(poly) != PERCENT_GRID:
                continue
            cdf = build_cdf(reconstruct_series_from_fit(poly, row.meta()))
            result = fit_polynomial(cdf, FitConfig())

            s = result.standardization
            raw = polyval(cdf.xs, result.poly.coeffs)
            standardized = polyval((cdf.xs - s.x_mean) / s.x_scale, result.standardized_coeffs)
            np.testing.assert_allclose(raw, standardized, rtol=1e-10, err_msg=row.label)


class TestAffineEquivariance:

    @pytest.mark.parametrize("alpha", [1e-3, 7.5, 1936.27])
    def test_rescaled_incomes(self, rng, alpha):
        for degree in range(1, 6):
            xs = np.sort(rng.uniform(5e3, 6e4, size=10))
            ps = np.array(PERCENT_GRID) + rng.normal(0, 1.5, size=10)

            base = fit_points(xs, ps, FitConfig(degree=degree))
            scaled = fit_points(alpha * xs, ps, FitConfig(degree=degree))

            expected = np.asarray(base.poly.coeffs) * alpha ** -np.arange(degree + 1.0)
            np.testing.assert_allclose(scaled.poly.coeffs, expected, rtol=1e-6)
            assert scaled.r_squared == pytest.approx(base.r_squared, abs=1e-10)