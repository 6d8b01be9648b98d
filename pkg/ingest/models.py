"""Pydantic models for decile data"""
from enum import Enum

from pydantic import BaseModel, ConfigDict, model_validator


DECILE_COUNT = 10


class Statistic(str, Enum):
    """How each decile is summarised"""
    MEAN_INCOME = "mean_income"
    UPPER_LIMIT = "upper_limit"


class IncomeKind(str, Enum):
    """Kind of income or wealth a series describes"""
    DISPOSABLE = "disposable"
    GROSS = "gross"
    PENSIONER = "pensioner"
    WEALTH = "wealth"


class SeriesMeta(BaseModel):
    """Metadata shared by every decile series"""
    model_config = ConfigDict(frozen=True)

    country: str
    year: int
    currency: str
    statistic: Statistic
    income_kind: IncomeKind


class DecileSeries(SeriesMeta):
    """
    One country/year row: ten decile values, lowest decile first.

    Construction only checks types; ordering, count and finiteness are
    enforced by ingest.validation.validate_series.
    """
    values: tuple[float, ...]

    @property
    def meta(self) -> SeriesMeta:
        """Metadata without the values"""
        return SeriesMeta(**self.model_dump(exclude={"values"}))

    @property
    def label(self) -> str:
        """Short human-readable identifier"""
        return f"{self.country} {self.year} {self.statistic.value}/{self.income_kind.value}"


class CpiSeries(BaseModel):
    """Consumer price index by year, base year = 100 by convention"""
    model_config = ConfigDict(frozen=True)

    base_year: int
    index: dict[int, float]

    @model_validator(mode="after")
    def _check_index(self) -> "CpiSeries":
        for year, value in self.index.items():
            if not value > 0:
                raise ValueError(f"CPI index for {year} must be positive, got {value}")
        if self.base_year not in self.index:
            raise ValueError(f"base year {self.base_year} missing from CPI series")
        return self
