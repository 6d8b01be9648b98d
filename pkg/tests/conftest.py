"""Shared test fixtures"""
import numpy as np
import pytest

from cli.config import settings
from cli.fixtures import load_fixtures
from fit.models import Polynomial
from ingest.models import DecileSeries, IncomeKind, SeriesMeta, Statistic


@pytest.fixture(scope="session")
def published_rows():
    return load_fixtures(settings.fixtures_file)


@pytest.fixture
def france_2002() -> Polynomial:
    """Upper limit on income, France 2002"""
    return Polynomial.quadratic(1.196e-7, -0.008721, 167.5)


@pytest.fixture
def italy_1989_lire() -> Polynomial:
    """Mean income, Italy 1989, in lire"""
    return Polynomial.quadratic(2.018e-14, -3.141e-6, 130.3)


@pytest.fixture
def wealth_1998() -> Polynomial:
    """Mean wealth, France 1998"""
    return Polynomial.quadratic(6.227e-10, -4.848e-4, 88.4)


@pytest.fixture
def meta() -> SeriesMeta:
    return SeriesMeta(
        country="France",
        year=2002,
        currency="EUR",
        statistic=Statistic.UPPER_LIMIT,
        income_kind=IncomeKind.DISPOSABLE,
    )


@pytest.fixture
def make_series(meta):
    def _make(values, **overrides) -> DecileSeries:
        return DecileSeries(**{**meta.model_dump(), **overrides}, values=tuple(values))
    return _make


@pytest.fixture
def rng():
    return np.random.default_rng(20120101)
