"""End-to-end tests of the command-line surface"""
import json

import pytest

from cli.app import _attach_negative_coefficients, main
from cli.fixtures import FIGURES, FIXTURE_HEADER, figure_rows, parse_fixture_csv
from cli.reports import (
    build_fit_report, fixture_rows_from_reports, parse_reports, read_reports, render_reports, serialize_decile_csv,
)
from fit.inverse import reconstruct_series_from_fit
from fit.least_squares import build_cdf, fit_polynomial
from fit.models import FitConfig
from ingest.errors import DecileFormatError
from ingest.parser import DECILE_HEADER, load_decile_file

HEADER = ",".join(DECILE_HEADER)


@pytest.fixture
def france_csv(tmp_path, france_2002, meta):
    path = tmp_path / "france.csv"
    path.write_text(serialize_decile_csv([reconstruct_series_from_fit(france_2002, meta)]))
    return path


def _data_lines(path):
    return [line for line in path.read_text().splitlines() if not line.startswith("#")]


class TestFit:

    def test_published_row_is_recovered(self, france_csv, tmp_path):
        output = tmp_path / "fit.jsonl"
        assert main(["fit", "--input", str(france_csv), "--output", str(output)]) == 0

        [report] = read_reports(output)
        assert report.coefficients["P1"] == pytest.approx(1.196e-7, rel=1e-6)
        assert report.coefficients["P2"] == pytest.approx(-0.008721, rel=1e-6)
        assert report.coefficients["P3"] == pytest.approx(167.5, rel=1e-6)
        assert report.r2_percent == 100.0
        assert report.degree == 2
        assert len(report.residuals) == 10

    def test_plot_files(self, france_csv, tmp_path):
        plots = tmp_path / "plots"
        argv = ["fit", "--input", str(france_csv), "--output", str(tmp_path / "fit.jsonl"),
                "--plot", str(plots)]
        assert main(argv) == 0

        [plot] = sorted(plots.iterdir())
        rows = _data_lines(plot)
        assert len(rows) == 10 + 200
        assert all(row.split("\t")[1] == "NaN" for row in rows[10:])

    def test_loglog_transform(self, france_csv, tmp_path):
        output = tmp_path / "fit.jsonl"
        argv = ["fit", "--input", str(france_csv), "--output", str(output), "--transform", "loglog"]
        assert main(argv) == 0
        assert read_reports(output)[0].transform.value == "loglog"

    def test_empty_input(self, tmp_path, capsys):
        path = tmp_path / "empty.csv"
        path.write_text(HEADER + "\n")
        assert main(["fit", "--input", str(path), "--output", str(tmp_path / "out.jsonl")]) == 1
        assert "no series" in capsys.readouterr().err
        assert not (tmp_path / "out.jsonl").exists()

    def test_degree_above_cap(self, france_csv, tmp_path, capsys):
        argv = ["fit", "--input", str(france_csv), "--output", str(tmp_path / "out.jsonl"),
                "--degree", "6"]
        assert main(argv) == 1
        assert "degree 6 outside the supported range 1..5" in capsys.readouterr().err

    def test_cpi_deflation(self, france_csv, tmp_path):
        cpi = tmp_path / "cpi.csv"
        cpi.write_text("year,index\n2002,50\n2009,100\n")
        output = tmp_path / "fit.jsonl"
        argv = ["fit", "--input", str(france_csv), "--output", str(output),
                "--cpi", str(cpi), "--base-year", "2009"]
        assert main(argv) == 0

        [report] = read_reports(output)
        assert report.currency == "EUR2009"
        assert report.coefficients["P1"] == pytest.approx(1.196e-7 / 4, rel=1e-6)

    def test_cpi_needs_base_year(self, france_csv, tmp_path, capsys):
        cpi = tmp_path / "cpi.csv"
        cpi.write_text("year,index\n2002,50\n2009,100\n")
        argv = ["fit", "--input", str(france_csv), "--output", str(tmp_path / "fit.jsonl"),
                "--cpi", str(cpi)]
        assert main(argv) == 1
        assert "--base-year" in capsys.readouterr().err

    @pytest.mark.parametrize("body, expected", [
        ("country,year\n", "line 1"),
        ("{header}\nFrance,2002,EUR,upper_limit,disposable,1,2,3\n", "line 2"),
        ("{header}\nFrance,2002,EUR,upper_limit,disposable,1,2,3,4,5,6,7,8,9,10\n"
         "France,2003,EUR,upper_limit,disposable,1,2,x,4,5,6,7,8,9,10\n", "line 3, field 'd3'"),
        ("{header}\nFrance,2002,EUR,upper_limit,disposable,1,2,3,4,5,5,7,8,9,10\n", "line 2, field 'values'"),
    ])
    def test_malformed_input_names_line(self, tmp_path, capsys, body, expected):
        path = tmp_path / "bad.csv"
        path.write_text(body.format(header=HEADER))
        assert main(["fit", "--input", str(path), "--output", str(tmp_path / "out.jsonl")]) == 1
        assert expected in capsys.readouterr().err

    def test_missing_input_file(self, tmp_path, capsys):
        argv = ["fit", "--input", str(tmp_path / "absent.csv"), "--output", str(tmp_path / "o.jsonl")]
        assert main(argv) == 1
        assert "absent.csv" in capsys.readouterr().err


class TestReports:

    def test_json_lines_are_stable(self, france_2002, meta):
        series = reconstruct_series_from_fit(france_2002, meta)
        reports = [build_fit_report(series, fit_polynomial(build_cdf(series), FitConfig(degree=d)))
                   for d in (1, 2, 3)]
        text = render_reports(reports)

        assert parse_reports(text) == reports
        assert render_reports(parse_reports(text)) == text
        assert list(json.loads(text.splitlines()[2])["coefficients"]) == ["P1", "P2", "P3", "P4"]

    def test_ascending_coeffs(self, france_2002, meta):
        series = reconstruct_series_from_fit(france_2002, meta)
        result = fit_polynomial(build_cdf(series), FitConfig())
        assert build_fit_report(series, result).ascending_coeffs() == result.poly.coeffs

    def test_report_rows_carry_descending_names(self, france_2002, meta):
        series = reconstruct_series_from_fit(france_2002, meta)
        report = build_fit_report(series, fit_polynomial(build_cdf(series), FitConfig()))
        [row] = fixture_rows_from_reports([report])
        assert (row.p1, row.p2, row.p3) == (report.coefficients["P1"], report.coefficients["P2"],
                                            report.coefficients["P3"])
        assert "generator" not in report.model_dump()


class TestRoundtrip:

    def test_shipped_table_passes(self, capsys):
        assert main(["roundtrip"]) == 0
        assert "110/110 rows passed" in capsys.readouterr().out

    def test_zero_tolerance_fails(self, capsys):
        assert main(["roundtrip", "--tolerance", "0"]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_flipped_sign_is_rejected(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text(
            ",".join(FIXTURE_HEADER) + "\n"
            "A2 France upper limit,2002,EUR2009,1.196e-7,0.008721,167.5,99.72\n"
        )
        assert main(["roundtrip", "--fixtures", str(path)]) == 1
        err = capsys.readouterr().err
        assert "A2 France upper limit 2002" in err
        assert "line 2" in err

    def test_header_only_table_is_rejected(self, tmp_path, capsys):
        path = tmp_path / "empty.csv"
        path.write_text(",".join(FIXTURE_HEADER) + "\n")
        assert main(["roundtrip", "--fixtures", str(path)]) == 1
        captured = capsys.readouterr()
        assert "no fixture rows" in captured.err
        assert "rows passed" not in captured.out

    def test_empty_report_file_is_rejected(self, tmp_path, capsys):
        path = tmp_path / "fit.jsonl"
        path.write_text("")
        assert main(["roundtrip", "--fixtures", str(path)]) == 1
        assert "no fixture rows" in capsys.readouterr().err

    def test_failing_row_logs_refit(self, tmp_path, capsys):
        path = tmp_path / "one.csv"
        path.write_text(",".join(FIXTURE_HEADER) + "\n"
                        "A2 France upper limit,2002,EUR2009,1.196e-7,-0.008721,167.5,99.72\n")
        assert main(["roundtrip", "--fixtures", str(path), "--tolerance", "-1"]) == 1
        assert "A2 France upper limit 2002: refit (" in capsys.readouterr().err

    def test_fit_report_feeds_roundtrip(self, france_csv, tmp_path, capsys):
        output = tmp_path / "fit.jsonl"
        assert main(["fit", "--input", str(france_csv), "--output", str(output)]) == 0
        assert main(["roundtrip", "--fixtures", str(output)]) == 0
        assert "1/1 rows passed" in capsys.readouterr().out

    def test_comment_lines_are_skipped(self):
        text = "# note\n" + ",".join(FIXTURE_HEADER) + "\n# another\nA1 France mean income,2002,EUR,1e-7,-0.01,180,99.5\n"
        [row] = parse_fixture_csv(text)
        assert row.meta().country == "France"

    def test_missing_header(self):
        with pytest.raises(DecileFormatError, match="missing header"):
            parse_fixture_csv("# only a comment\n")


class TestSample:

    ARGS = ["sample", "--p1", "1.196e-7", "--p2", "-0.008721", "--p3", "167.5", "--seed", "99"]

    def test_outputs_are_reproducible(self, tmp_path):
        first, second = tmp_path / "a.txt", tmp_path / "b.txt"
        assert main([*self.ARGS, "--n", "2000", "--output", str(first)]) == 0
        assert main([*self.ARGS, "--n", "2000", "--output", str(second)]) == 0

        assert first.read_bytes() == second.read_bytes()
        assert (tmp_path / "a.txt.report.json").read_bytes() == (tmp_path / "b.txt.report.json").read_bytes()
        assert len(first.read_text().splitlines()) == 2000

    def test_report_contents(self, tmp_path):
        output = tmp_path / "incomes.txt"
        assert main([*self.ARGS, "--n", "5000", "--output", str(output)]) == 0

        report = json.loads((tmp_path / "incomes.txt.report.json").read_text())
        assert report["generator"] == "numpy.random.PCG64"
        assert report["seed"] == 99
        assert report["n"] == 5000
        assert report["coefficients"] == {"P1": 1.196e-7, "P2": -0.008721, "P3": 167.5}
        assert 0 < report["gini"] < 1
        assert report["lorenz_deciles"][-1] == pytest.approx(1.0)
        assert len(report["upper_deciles"]) == 10
        assert [check["p"] for check in report["quantile_checks"]] == [100.0, 90.0, 80.0, 70.0, 60.0,
                                                                        50.0, 40.0, 30.0, 20.0, 10.0]
        for check in report["quantile_checks"]:
            assert check["observed_fraction"] == pytest.approx(check["expected_fraction"], abs=0.03)

    def test_negative_incomes_skip_gini(self, tmp_path):
        output = tmp_path / "wealth.txt"
        argv = ["sample", "--p1", "6.227e-10", "--p2", "-4.848e-4", "--p3", "88.4",
                "--n", "1000", "--income-kind", "wealth", "--output", str(output)]
        assert main(argv) == 0

        report = json.loads((tmp_path / "wealth.txt.report.json").read_text())
        assert report["gini"] is None
        assert report["lorenz_deciles"] is None

    @pytest.mark.parametrize("p2", [["--p2", "-3.141e-6"], ["--p2=-3.141e-6"]])
    def test_lira_coefficients_in_scientific_notation(self, tmp_path, p2):
        output = tmp_path / "lire.txt"
        argv = ["sample", "--p1", "2.018e-14", *p2, "--p3", "130.3",
                "--n", "100", "--output", str(output)]
        assert main(argv) == 0

        report = json.loads((tmp_path / "lire.txt.report.json").read_text())
        assert report["coefficients"]["P2"] == -3.141e-6

    @pytest.mark.parametrize("argv, expected", [
        (["--p2", "-4.848e-4"], ["--p2=-4.848e-4"]),
        (["--p1", "-1E+3", "--p3", "-.5"], ["--p1=-1E+3", "--p3=-.5"]),
        (["--p2", "-x"], ["--p2", "-x"]),
        (["--output", "-1e-3"], ["--output", "-1e-3"]),
        (["--p3"], ["--p3"]),
    ])
    def test_negative_values_are_attached(self, argv, expected):
        assert _attach_negative_coefficients(argv) == expected

    def test_zero_size_is_a_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            main([*self.ARGS, "--n", "0", "--output", str(tmp_path / "x.txt")])
        assert info.value.code == 2

    def test_unattainable_band(self, tmp_path, capsys):
        argv = ["sample", "--p1", "1e-6", "--p2", "-0.02", "--p3", "115", "--n", "10",
                "--output", str(tmp_path / "x.txt")]
        assert main(argv) == 1
        assert "p=10" in capsys.readouterr().err
        assert not (tmp_path / "x.txt").exists()


class TestFigures:

    def test_five_datasets(self, tmp_path):
        assert main(["figures", "--output-dir", str(tmp_path)]) == 0

        for figure in FIGURES:
            path = tmp_path / figure.filename
            assert len(_data_lines(path)) == 10 + 200
            assert path.read_text().startswith(f"# figure {figure.number}:")

        reports = read_reports(tmp_path / "figures.jsonl")
        for figure, report in zip(FIGURES, reports):
            assert report.coefficients["P1"] == pytest.approx(figure.p1, rel=1e-6)
            assert report.coefficients["P2"] == pytest.approx(figure.p2, rel=1e-6)
            assert report.coefficients["P3"] == pytest.approx(figure.p3, rel=1e-6)

        assert len(load_decile_file(tmp_path / "figures_deciles.csv")) == 5

    def test_equations_match_table(self, published_rows):
        pairs = figure_rows(published_rows)
        assert [figure.number for figure, _ in pairs] == [1, 2, 3, 4, 5]

    def test_mismatch_is_reported(self, published_rows):
        target = FIGURES[0]
        rows = [
            row.model_copy(update={"p3": row.p3 + 1})
            if (row.dataset, row.year) == (target.dataset, target.year) else row
            for row in published_rows
        ]
        with pytest.raises(ValueError, match="figure 1"):
            figure_rows(rows)


class TestSweep:

    def test_prints_every_degree(self, france_csv, capsys):
        assert main(["sweep", "--input", str(france_csv)]) == 0
        out = capsys.readouterr().out
        assert "deg 5" in out
        assert "France 2002 upper_limit/disposable" in out
