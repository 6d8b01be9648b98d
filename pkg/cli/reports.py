"""Report, plot and CSV writers"""
import csv
import io
import logging
from pathlib import Path
from typing import Iterable

import numpy as np
from pydantic import BaseModel

from fit.models import FitResult, Standardization, Transform
from ingest.models import DecileSeries, IncomeKind, Statistic
from ingest.parser import DECILE_HEADER

from .fixtures import PublishedFitRow

logger = logging.getLogger(__name__)


class FitReport(BaseModel):
    """
    One fitted series, as written to a report file.

    coefficients use descending naming: P1 is the highest power, matching
    the published tables; the internal Polynomial stays ascending.
    """
    country: str
    year: int
    currency: str
    statistic: Statistic
    income_kind: IncomeKind
    degree: int
    transform: Transform
    coefficients: dict[str, float]
    r2_percent: float
    r_squared: float
    ss_res: float
    ss_tot: float
    residuals: list[float]
    standardization: Standardization

    def ascending_coeffs(self) -> tuple[float, ...]:
        """Coefficients back in ascending power order"""
        return tuple(self.coefficients[f"P{i}"] for i in range(self.degree + 1, 0, -1))


def descending_names(coeffs: Iterable[float]) -> dict[str, float]:
    """Ascending coefficients keyed P1 (highest power) .. P(d+1) (constant)"""
    descending = list(coeffs)[::-1]
    return {f"P{i}": float(c) for i, c in enumerate(descending, start=1)}


def build_fit_report(series: DecileSeries, result: FitResult) -> FitReport:
    """Combine a series and its fit into a report"""
    return FitReport(
        country=series.country,
        year=series.year,
        currency=series.currency,
        statistic=series.statistic,
        income_kind=series.income_kind,
        degree=result.poly.degree,
        transform=result.transform,
        coefficients=descending_names(result.poly.coeffs),
        r2_percent=round(result.r_squared * 100, 2),
        r_squared=result.r_squared,
        ss_res=result.ss_res,
        ss_tot=result.ss_tot,
        residuals=list(result.residuals),
        standardization=result.standardization,
    )


def render_reports(reports: Iterable[FitReport]) -> str:
    """JSON Lines: one document per series, fields in declaration order"""
    return "".join(report.model_dump_json() + "\n" for report in reports)


def parse_reports(text: str) -> list[FitReport]:
    """Inverse of render_reports"""
    return [FitReport.model_validate_json(line) for line in text.splitlines() if line.strip()]


def read_reports(path: str | Path) -> list[FitReport]:
    return parse_reports(Path(path).read_text(encoding="utf-8"))


def fixture_rows_from_reports(reports: Iterable[FitReport]) -> list[PublishedFitRow]:
    """Turn degree-2 linear fit reports into coefficient-table rows"""
    rows = []
    for report in reports:
        if report.degree != 2 or report.transform is not Transform.LINEAR:
            raise ValueError(
                f"{report.country} {report.year}: only linear quadratic fits can be round-tripped"
            )
        p3, p2, p1 = report.ascending_coeffs()
        rows.append(PublishedFitRow(
            dataset=f"fit {report.country} {report.statistic.value} {report.income_kind.value}",
            year=report.year,
            currency=report.currency,
            p1=p1,
            p2=p2,
            p3=p3,
            r2_percent=report.r2_percent,
        ))
    return rows


def render_plot(xs, observed, result: FitResult, samples: int, title: str = "") -> str:
    """
    Tab-separated plot data: observed rows, then a dense fitted curve.

    Columns are x, observed_p, fitted_p; curve rows carry NaN as the
    observed value so gnuplot skips them in the point series.
    """
    xs = np.asarray(xs, dtype=float)
    lines = []
    if title:
        lines.append(f"# {title}")
    lines.append("# x\tobserved_p\tfitted_p")

    for x, p, fitted in zip(xs, observed, result.predict(xs)):
        lines.append(f"{float(x)!r}\t{float(p)!r}\t{float(fitted)!r}")

    if result.transform is Transform.LOGLOG:
        dense = np.geomspace(xs.min(), xs.max(), samples)
    else:
        dense = np.linspace(xs.min(), xs.max(), samples)
    for x, fitted in zip(dense, result.predict(dense)):
        lines.append(f"{float(x)!r}\tNaN\t{float(fitted)!r}")

    return "\n".join(lines) + "\n"


def serialize_decile_csv(series_list: Iterable[DecileSeries]) -> str:
    """Decile CSV text that parse_decile_csv reads back unchanged"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(DECILE_HEADER)
    for series in series_list:
        writer.writerow([
            series.country,
            str(series.year),
            series.currency,
            series.statistic.value,
            series.income_kind.value,
            *(repr(float(v)) for v in series.values),
        ])
    return buffer.getvalue()


def write_outputs(outputs: dict[Path, str]):
    """
    Write whole files; if any write fails, remove every file written so far.
    """
    written: list[Path] = []
    try:
        for path, content in outputs.items():
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(content, encoding="utf-8")
            written.append(path)
    except OSError:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    for path in written:
        logger.info(f"💾 Wrote {path}")
