"""Subcommand implementations; each returns a process exit status"""
import argparse
import logging
from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import BaseModel

from fit.errors import FitError
from fit.inverse import invert_decreasing_quadratic, reconstruct_series_from_fit
from fit.least_squares import build_cdf, degree_sweep, fit_polynomial
from fit.models import PERCENT_GRID, FitConfig, Polynomial, Transform
from ingest.models import IncomeKind, SeriesMeta, Statistic
from ingest.parser import load_cpi_file, load_decile_file
from ingest.validation import deflate_to_real
from synth.config import SampleSpec
from synth.deciles import compute_deciles
from synth.inequality import gini, lorenz_curve
from synth.roundtrip import roundtrip_check
from synth.sampler import GENERATOR_NAME, sample_incomes

from .config import settings
from .fixtures import PublishedFitRow, figure_rows, load_fixtures
from .reports import (
    build_fit_report,
    descending_names,
    fixture_rows_from_reports,
    read_reports,
    render_plot,
    render_reports,
    serialize_decile_csv,
    write_outputs,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1


def _plot_name(index: int, country: str, year: int, statistic: str) -> str:
    slug = "".join(ch if ch.isalnum() else "_" for ch in country)
    return f"{index:03d}_{slug}_{year}_{statistic}.tsv"


def cmd_fit(args: argparse.Namespace) -> int:
    """Fit every series of a decile CSV and write one report per series"""
    series_list = load_decile_file(args.input)
    if not series_list:
        raise ValueError(f"no series in {args.input}")

    if args.cpi:
        if args.base_year is None:
            raise ValueError("--cpi needs --base-year")
        cpi = load_cpi_file(args.cpi, args.base_year)
        series_list = [deflate_to_real(series, cpi) for series in series_list]
        logger.info(f"💱 Deflated {len(series_list)} series to {args.base_year} prices")

    config = FitConfig(degree=args.degree, transform=Transform(args.transform))

    reports = []
    outputs: dict[Path, str] = {}
    for index, series in enumerate(series_list, start=1):
        cdf = build_cdf(series)
        result = fit_polynomial(cdf, config)
        reports.append(build_fit_report(series, result))
        logger.info(f"📈 {series.label}: R2={result.r_squared * 100:.2f}%")

        if args.plot:
            path = Path(args.plot) / _plot_name(index, series.country, series.year, series.statistic.value)
            outputs[path] = render_plot(
                cdf.xs, cdf.ps, result, settings.plot_samples, title=series.label
            )

    outputs[Path(args.output)] = render_reports(reports)
    write_outputs(outputs)
    logger.info(f"✅ Fitted {len(reports)} series (degree {config.degree}, {config.transform.value})")
    return EXIT_OK


def _load_roundtrip_rows(path: Path) -> list[PublishedFitRow]:
    if path.suffix == ".jsonl":
        return fixture_rows_from_reports(read_reports(path))
    return load_fixtures(path)


def cmd_roundtrip(args: argparse.Namespace) -> int:
    """Round-trip every coefficient row and print a pass/fail table"""
    path = Path(args.fixtures) if args.fixtures else settings.fixtures_file
    rows = _load_roundtrip_rows(path)
    if not rows:
        raise ValueError(f"no fixture rows in {path}")
    tolerance = args.tolerance

    print(f"{'dataset':<36} {'year':>4} {'max_rel_err':>12} {'refit_R2':>20} {'levels':>6}  status")
    failures = 0
    for row in rows:
        try:
            report = roundtrip_check(row.polynomial(), tolerance, row.meta())
        except FitError as e:
            failures += 1
            logger.error(f"❌ {row.label}: {e}")
            print(f"{row.dataset:<36} {row.year:>4} {'-':>12} {'-':>20} {'-':>6}  FAIL ({e})")
            continue

        if not report.passed:
            failures += 1
            logger.warning(f"⚠️  {row.label}: refit {report.refit.coeffs} vs {row.polynomial().coeffs}")
        status = "pass" if report.passed else "FAIL"
        print(
            f"{row.dataset:<36} {row.year:>4} {report.max_coeff_rel_err:>12.3e} "
            f"{report.refit_r_squared:>20.17f} {len(report.levels_used):>6}  {status}"
        )

    passed = len(rows) - failures
    print(f"{passed}/{len(rows)} rows passed at tolerance {tolerance:g}")
    if failures:
        logger.error(f"❌ {failures} of {len(rows)} rows failed the round-trip")
        return EXIT_FAILURE
    logger.info(f"✅ All {len(rows)} rows round-tripped")
    return EXIT_OK


class QuantileCheck(BaseModel):
    """Sampled share at or above the model income for one percent level"""
    p: float
    x: float
    observed_fraction: float
    expected_fraction: float


class SampleReport(BaseModel):
    """Companion report of a sampling run"""
    generator: str
    seed: int
    n: int
    p_low: float
    p_high: float
    coefficients: dict[str, float]
    mean_deciles: list[float]
    upper_deciles: list[float]
    gini: Optional[float]
    lorenz_deciles: Optional[list[float]]
    quantile_checks: list[QuantileCheck]


def cmd_sample(args: argparse.Namespace) -> int:
    """Draw a synthetic population and write it with its decile/inequality report"""
    poly = Polynomial.quadratic(args.p1, args.p2, args.p3)
    spec = SampleSpec(n=args.n, seed=args.seed, p_low=args.p_low, p_high=args.p_high)
    incomes = sample_incomes(poly, spec)

    meta = SeriesMeta(
        country=args.country,
        year=args.year,
        currency=args.currency,
        statistic=Statistic.MEAN_INCOME,
        income_kind=IncomeKind(args.income_kind),
    )
    mean_series, upper_series = compute_deciles(incomes, meta)

    gini_value = None
    lorenz_deciles = None
    if incomes.min() >= 0:
        gini_value = gini(incomes)
        population, share = lorenz_curve(incomes)
        lorenz_deciles = [float(np.interp(q / 10, population, share)) for q in range(1, 11)]
    else:
        logger.warning("⚠️  Sample contains negative incomes; Gini and Lorenz curve skipped")

    checks = []
    band = spec.p_high - spec.p_low
    for level in PERCENT_GRID:
        if not spec.p_low <= level <= spec.p_high or band == 0:
            continue
        x = invert_decreasing_quadratic(poly, level)
        checks.append(QuantileCheck(
            p=level,
            x=x,
            observed_fraction=float(np.mean(incomes >= x)),
            expected_fraction=(level - spec.p_low) / band,
        ))

    report = SampleReport(
        generator=GENERATOR_NAME,
        seed=spec.seed,
        n=spec.n,
        p_low=spec.p_low,
        p_high=spec.p_high,
        coefficients=descending_names(poly.coeffs),
        mean_deciles=list(mean_series.values),
        upper_deciles=list(upper_series.values),
        gini=gini_value,
        lorenz_deciles=lorenz_deciles,
        quantile_checks=checks,
    )

    output = Path(args.output)
    write_outputs({
        output: "\n".join(repr(v) for v in incomes.tolist()) + "\n",
        output.with_name(output.name + ".report.json"): report.model_dump_json(indent=2) + "\n",
    })
    logger.info(f"✅ Sampled {spec.n} incomes, gini={gini_value}")
    return EXIT_OK


def cmd_figures(args: argparse.Namespace) -> int:
    """Rebuild the five illustrated fits as plot data"""
    rows = load_fixtures(settings.fixtures_file)
    out_dir = Path(args.output_dir)
    config = FitConfig(degree=2)

    outputs: dict[Path, str] = {}
    series_list = []
    reports = []
    for figure, row in figure_rows(rows):
        series = reconstruct_series_from_fit(row.polynomial(), row.meta())
        cdf = build_cdf(series)
        result = fit_polynomial(cdf, config)
        coeffs = descending_names(result.poly.coeffs)
        title = (
            f"figure {figure.number}: {figure.title}; "
            f"P1={coeffs['P1']:.4g} P2={coeffs['P2']:.4g} P3={coeffs['P3']:.4g}; "
            f"published R2={figure.r2_percent}%"
        )
        outputs[out_dir / figure.filename] = render_plot(
            cdf.xs, cdf.ps, result, settings.plot_samples, title=title
        )
        series_list.append(series)
        reports.append(build_fit_report(series, result))

    outputs[out_dir / "figures_deciles.csv"] = serialize_decile_csv(series_list)
    outputs[out_dir / "figures.jsonl"] = render_reports(reports)
    write_outputs(outputs)
    logger.info(f"✅ Wrote {len(series_list)} figure datasets to {out_dir}")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    """Compare goodness of fit across polynomial degrees for every series"""
    series_list = load_decile_file(args.input)
    if not series_list:
        raise ValueError(f"no series in {args.input}")

    transform = Transform(args.transform)
    degrees = range(1, args.max_degree + 1)
    print(f"{'series':<48}" + "".join(f"{'deg ' + str(d):>12}" for d in degrees))
    for series in series_list:
        results = degree_sweep(build_cdf(series), degrees, transform)
        print(f"{series.label:<48}" + "".join(f"{results[d].r_squared * 100:>11.4f}%" for d in degrees))
    return EXIT_OK
