import csv
import io
import json

import pytest

from hilbertdepth.cli import main
from hilbertdepth.depth import HilbertDecomposition, verify_decomposition
from hilbertdepth.series import LaurentPolynomial, RationalSeries


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


class TestHdepth:
    def test_power_ideal(self):
        code, text = run("hdepth", "--power", "n=7", "s=2")
        assert code == 0
        assert "hdepth = 3" in text

    def test_free_module(self):
        code, text = run("hdepth", "--numerator", "0:1", "--n", "3", "--format", "json")
        assert code == 0
        assert json.loads(text)["hdepth"] == 3

    def test_negative_coefficient_is_math_failure(self, capsys):
        code, _ = run("hdepth", "--numerator", "0:1,-2", "--n", "1")
        assert code == 1
        assert "not a Hilbert series" in capsys.readouterr().err

    def test_with_decomposition(self):
        code, text = run("hdepth", "--power", "n=5", "s=1", "--decompose", "--format", "json")
        data = json.loads(text)
        assert code == 0 and data["hdepth"] == 3
        assert data["decomposition"]["hdepth"] == 3

    def test_csv(self):
        code, text = run("hdepth", "--power", "n=4", "s=1", "--format", "csv")
        rows = list(csv.reader(io.StringIO(text)))
        assert code == 0
        assert rows[0] == ["hdepth", "certificate_at_d", "certificate_above_d"]
        assert rows[1][0] == "2"

    @pytest.mark.parametrize(
        "argv",
        [
            ("hdepth",),
            ("hdepth", "--power", "n=7"),
            ("hdepth", "--power", "n=7", "s=x"),
            ("hdepth", "--power", "n=0", "s=1"),
            ("hdepth", "--numerator", "garbage", "--n", "2"),
            ("hdepth", "--numerator", "0:1", "--n", "-1"),
            ("frobnicate",),
        ],
    )
    def test_usage_errors(self, argv, capsys):
        code, _ = run(*argv)
        assert code == 2


class TestDecompose:
    @pytest.mark.parametrize(
        "argv",
        [
            ("--power", "n=9", "s=2"),
            ("--numerator", "0:1,3,1", "--n", "4"),
            ("--numerator", "2:5,-1", "--n", "2"),
        ],
    )
    def test_json_round_trip_verifies(self, argv):
        code, text = run("decompose", *argv, "--format", "json")
        assert code == 0
        dec = HilbertDecomposition.from_json(json.loads(text))
        _, depth_text = run("hdepth", *argv, "--format", "json")
        assert dec.min_level == json.loads(depth_text)["hdepth"]
        if argv[0] == "--power":
            from hilbertdepth.catalog import PowerIdealParams, power_ideal_series

            n, s = (int(a.split("=")[1]) for a in argv[1:])
            rs = power_ideal_series(PowerIdealParams(n, s))
        else:
            rs = RationalSeries(LaurentPolynomial.from_text(argv[1]), int(argv[3]))
        assert verify_decomposition(dec, rs)

    def test_big_coefficients_are_strings(self):
        big = 10**30
        code, text = run("decompose", "--numerator", f"0:1,{big}", "--n", "2", "--format", "json")
        assert code == 0
        data = json.loads(text)
        coeffs = [c for part in data["parts"] for c in part["numerator"]["coeffs"]]
        assert all(isinstance(c, str) for c in coeffs)
        assert any(abs(int(c)) >= 2**53 for c in coeffs)

    def test_rejects_non_hilbert(self):
        code, _ = run("decompose", "--numerator", "0:1,-3", "--n", "2")
        assert code == 1


class TestExpand:
    def test_csv(self):
        code, text = run("expand", "--numerator", "0:1", "--n", "2", "--max", "4", "--format", "csv")
        rows = list(csv.reader(io.StringIO(text)))
        assert code == 0
        assert rows == [["degree", "coefficient"], ["0", "1"], ["1", "2"], ["2", "3"], ["3", "4"], ["4", "5"]]

    def test_json_polynomial_input(self):
        poly = json.dumps({"offset": 0, "coeffs": ["1", "1"]})
        code, text = run("expand", "--numerator", poly, "--n", "1", "--max", "3", "--format", "json")
        assert code == 0
        assert [row["coefficient"] for row in json.loads(text)] == [1, 2, 2, 2]

    def test_usage(self):
        assert run("expand", "--numerator", "5:1", "--n", "1", "--max", "2")[0] == 2


class TestPowerTable:
    def test_small_grid_all_match(self):
        code, text = run("power-table", "--nmax", "20", "--smax", "4", "--format", "json")
        rows = json.loads(text)
        assert code == 0
        assert len(rows) == 80 and all(r["match"] for r in rows)
        assert [(r["n"], r["s"]) for r in rows] == sorted((r["n"], r["s"]) for r in rows)

    def test_maximal_ideal_row(self):
        code, text = run("power-table", "--nmin", "5", "--nmax", "5", "--smax", "1", "--format", "csv")
        assert code == 0
        assert text.splitlines()[1] == "5,1,3,3,True"

    def test_large_s(self):
        code, text = run(
            "power-table", "--nmax", "3", "--smin", "100", "--smax", "100", "--format", "json"
        )
        assert code == 0
        assert [r["hdepth"] for r in json.loads(text)] == [1, 1, 1]

    def test_parallel_matches_serial(self):
        serial = run("power-table", "--nmax", "12", "--smax", "3", "--format", "csv")
        parallel = run("power-table", "--nmax", "12", "--smax", "3", "--format", "csv", "--jobs", "2")
        assert serial == parallel

    def test_bad_bounds(self):
        assert run("power-table", "--nmin", "5", "--nmax", "2")[0] == 2
        assert run("power-table", "--jobs", "0")[0] == 2


class TestSyzygy:
    def test_table(self):
        code, text = run("syzygy", "--n", "5", "--r", "3", "--u", "2", "--kmax", "6", "--format", "json")
        rows = json.loads(text)
        assert code == 0
        assert all(r["right"] == r["left"] == r["closed"] for r in rows)

    def test_bad_params(self):
        assert run("syzygy", "--n", "3", "--r", "4", "--u", "1")[0] == 2


class TestAudit:
    @pytest.mark.parametrize(
        "argv",
        [
            ("lemma4", "--max", "12"),
            ("prop1", "--nmax", "150", "--smax", "10"),
            ("lemma5", "--smax", "12", "--nmax", "400"),
            ("eq7", "--points", "50"),
            ("lemma1", "--points", "200", "--seed", "3"),
        ],
    )
    def test_checks_pass(self, argv):
        code, text = run("audit", *argv)
        assert code == 0
        assert "0 failures" in text

    def test_json_report(self):
        code, text = run("audit", "eq19", "--max", "10", "--format", "json")
        data = json.loads(text)
        assert code == 0 and data["failures"] == [] and data["total_points"] > 0

    def test_margin_too_strict_reports_failure(self):
        code, text = run("audit", "eq7", "--points", "5", "--margin", "0.5")
        assert code == 1
        assert "FAIL" in text

    def test_unknown_check(self):
        assert run("audit", "lemma99")[0] == 2

    def test_bad_margin(self):
        assert run("audit", "eq7", "--margin", "0")[0] == 2
