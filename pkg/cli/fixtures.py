"""Published coefficient tables and figure equations"""
import csv
import io
import logging
from dataclasses import dataclass
from pathlib import Path

from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from fit.models import Polynomial
from ingest.errors import DecileFormatError
from ingest.models import IncomeKind, SeriesMeta, Statistic

logger = logging.getLogger(__name__)

FIXTURE_HEADER = ["dataset", "year", "currency", "p1", "p2", "p3", "r2_percent"]


class PublishedFitRow(BaseModel):
    """One published row: quadratic (p1), linear (p2) and constant (p3) coefficients"""
    model_config = ConfigDict(frozen=True)

    dataset: str
    year: int
    currency: str
    p1: float
    p2: float
    p3: float
    r2_percent: float

    @model_validator(mode="after")
    def _check_signs(self) -> "PublishedFitRow":
        if not (self.p1 > 0 and self.p2 < 0 and self.p3 > 0):
            raise ValueError(
                f"expected p1 > 0, p2 < 0, p3 > 0, got ({self.p1}, {self.p2}, {self.p3})"
            )
        if not 90 < self.r2_percent <= 100:
            raise ValueError(f"r2_percent must lie in (90, 100], got {self.r2_percent}")
        return self

    @property
    def label(self) -> str:
        return f"{self.dataset} {self.year}"

    def polynomial(self) -> Polynomial:
        return Polynomial.quadratic(self.p1, self.p2, self.p3)

    def meta(self) -> SeriesMeta:
        """Series metadata implied by the dataset name"""
        name = self.dataset.lower()
        if "wealth" in name:
            kind = IncomeKind.WEALTH
        elif "pensioner" in name:
            kind = IncomeKind.PENSIONER
        elif "gross" in name:
            kind = IncomeKind.GROSS
        else:
            kind = IncomeKind.DISPOSABLE
        statistic = Statistic.UPPER_LIMIT if "upper" in name else Statistic.MEAN_INCOME
        words = self.dataset.split()
        country = words[1] if len(words) > 1 else self.dataset
        return SeriesMeta(
            country=country,
            year=self.year,
            currency=self.currency,
            statistic=statistic,
            income_kind=kind,
        )


def parse_fixture_csv(text: str) -> list[PublishedFitRow]:
    """
    Parse the coefficient table; lines starting with '#' are comments.

    Raises:
        DecileFormatError: header mismatch, field count, or a row breaking the invariants
    """
    rows: list[PublishedFitRow] = []
    header_seen = False

    reader = csv.reader(io.StringIO(text))
    for fields in reader:
        line = reader.line_num
        if not fields or fields[0].startswith("#"):
            continue
        if not header_seen:
            if fields != FIXTURE_HEADER:
                raise DecileFormatError(f"header mismatch: expected '{','.join(FIXTURE_HEADER)}'", line)
            header_seen = True
            continue
        if len(fields) != len(FIXTURE_HEADER):
            raise DecileFormatError(f"expected {len(FIXTURE_HEADER)} fields, got {len(fields)}", line)
        try:
            rows.append(PublishedFitRow(**dict(zip(FIXTURE_HEADER, fields))))
        except ValidationError as e:
            error = e.errors()[0]
            field = str(error["loc"][0]) if error["loc"] else None
            raise DecileFormatError(
                f"row '{fields[0]} {fields[1]}' rejected: {error['msg']}", line, field
            ) from e

    if not header_seen:
        raise DecileFormatError("missing header", 1)
    return rows


def load_fixtures(path: str | Path) -> list[PublishedFitRow]:
    """Read the coefficient table from disk"""
    rows = parse_fixture_csv(Path(path).read_text(encoding="utf-8"))
    logger.info(f"📂 Loaded {len(rows)} coefficient rows from {path}")
    return rows


@dataclass(frozen=True)
class FigureEquation:
    """A figure's printed equation and the table row it illustrates"""
    number: int
    title: str
    dataset: str
    year: int
    p1: float
    p2: float
    p3: float
    r2_percent: float

    @property
    def filename(self) -> str:
        return f"figure{self.number}.tsv"


FIGURES: tuple[FigureEquation, ...] = (
    FigureEquation(1, "upper limit on income, France 2002", "A2 France upper limit", 2002,
                   1.196e-7, -0.008721, 167.5, 99.72),
    FigureEquation(2, "upper limit on income, Finland 1988", "A4 Finland upper limit", 1988,
                   1.596e-7, -0.01135, 190.8, 99.43),
    FigureEquation(3, "mean income, Romania 2004", "A5 Romania mean income", 2004,
                   4.693e-13, -1.886e-5, 191.9, 97.5),
    FigureEquation(4, "mean income, Italy 2000", "A6 Italy mean income", 2000,
                   3.213e-8, -0.00388, 124.4, 99.58),
    FigureEquation(5, "mean wealth, France 2010", "A10 France mean wealth", 2010,
                   1.294e-10, -0.000223, 87.6, 96.15),
)


def figure_rows(rows: list[PublishedFitRow]) -> list[tuple[FigureEquation, PublishedFitRow]]:
    """
    Pair each figure with its table row, checking the printed equation matches.

    Raises:
        ValueError: a figure's row is missing or its coefficients differ
    """
    by_key = {(row.dataset, row.year): row for row in rows}
    pairs = []
    for figure in FIGURES:
        row = by_key.get((figure.dataset, figure.year))
        if row is None:
            raise ValueError(f"figure {figure.number}: no row for {figure.dataset} {figure.year}")
        printed = (figure.p1, figure.p2, figure.p3, figure.r2_percent)
        tabled = (row.p1, row.p2, row.p3, row.r2_percent)
        if printed != tabled:
            raise ValueError(f"figure {figure.number}: equation {printed} differs from table row {tabled}")
        pairs.append((figure, row))
    return pairs
