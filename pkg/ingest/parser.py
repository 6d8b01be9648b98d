"""Decile and CPI CSV parsing"""
import csv
import io
import logging
import re
from pathlib import Path

from pydantic import ValidationError

from .errors import DecileFormatError, SeriesValidationError
from .models import DECILE_COUNT, CpiSeries, DecileSeries, IncomeKind, Statistic
from .validation import validate_series

logger = logging.getLogger(__name__)

DECILE_COLUMNS = [f"d{i}" for i in range(1, DECILE_COUNT + 1)]
DECILE_HEADER = ["country", "year", "currency", "statistic", "income_kind", *DECILE_COLUMNS]
CPI_HEADER = ["year", "index"]

# Dot decimal only: no thousands separators, no comma decimals, no nan/inf words
_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
_INTEGER = re.compile(r"^[+-]?\d+$")


def _parse_number(token: str, line: int, field: str) -> float:
    if not _NUMBER.match(token):
        raise DecileFormatError(f"unparseable number '{token}'", line, field)
    return float(token)


def _parse_year(token: str, line: int, field: str = "year") -> int:
    if not _INTEGER.match(token):
        raise DecileFormatError(f"unparseable integer '{token}'", line, field)
    return int(token)


def _rows(text: str, header: list[str]):
    """Yield (line number, fields) for every non-blank data line after a checked header"""
    reader = csv.reader(io.StringIO(text))
    first = next(reader, None)
    if first != header:
        raise DecileFormatError(
            f"header mismatch: expected '{','.join(header)}', got '{','.join(first or [])}'",
            1,
        )
    for fields in reader:
        if not fields:
            continue
        yield reader.line_num, fields


def parse_decile_csv(text: str) -> list[DecileSeries]:
    """
    Parse a decile CSV document into validated series, in file order.

    Raises:
        DecileFormatError: header, field count, number, enum or validation failure
    """
    series_list: list[DecileSeries] = []

    for line, fields in _rows(text, DECILE_HEADER):
        if len(fields) != len(DECILE_HEADER):
            raise DecileFormatError(
                f"expected {len(DECILE_HEADER)} fields, got {len(fields)}", line
            )

        country, year, currency, statistic, income_kind = fields[:5]
        try:
            statistic_value = Statistic(statistic)
        except ValueError:
            raise DecileFormatError(f"unknown statistic '{statistic}'", line, "statistic") from None
        try:
            kind_value = IncomeKind(income_kind)
        except ValueError:
            raise DecileFormatError(f"unknown income kind '{income_kind}'", line, "income_kind") from None

        values = tuple(
            _parse_number(token, line, column)
            for token, column in zip(fields[5:], DECILE_COLUMNS)
        )

        series = DecileSeries(
            country=country,
            year=_parse_year(year, line),
            currency=currency,
            statistic=statistic_value,
            income_kind=kind_value,
            values=values,
        )
        try:
            series_list.append(validate_series(series))
        except SeriesValidationError as e:
            raise DecileFormatError(str(e), line, "values") from e

    logger.debug(f"Parsed {len(series_list)} decile series")
    return series_list


def parse_cpi_csv(text: str, base_year: int) -> CpiSeries:
    """Parse a `year,index` CSV document into a CPI series rebased at base_year"""
    index: dict[int, float] = {}

    for line, fields in _rows(text, CPI_HEADER):
        if len(fields) != len(CPI_HEADER):
            raise DecileFormatError(f"expected 2 fields, got {len(fields)}", line)
        year = _parse_year(fields[0], line)
        if year in index:
            raise DecileFormatError(f"duplicate year {year}", line, "year")
        index[year] = _parse_number(fields[1], line, "index")

    try:
        return CpiSeries(base_year=base_year, index=index)
    except ValidationError as e:
        raise ValueError(f"invalid CPI series: {e.errors()[0]['msg']}") from e


def load_decile_file(path: str | Path) -> list[DecileSeries]:
    """Read and parse a decile CSV file"""
    text = Path(path).read_text(encoding="utf-8")
    series_list = parse_decile_csv(text)
    logger.info(f"📂 Loaded {len(series_list)} series from {path}")
    return series_list


def load_cpi_file(path: str | Path, base_year: int) -> CpiSeries:
    """Read and parse a CPI CSV file"""
    cpi = parse_cpi_csv(Path(path).read_text(encoding="utf-8"), base_year)
    logger.info(f"📂 Loaded CPI for {len(cpi.index)} years from {path} (base {base_year})")
    return cpi
