"""
Tests for the command-line interface
"""
import argparse
import json

import pytest

from cli.commands import CommandOutput, parse_kappa_values, parse_range, render_output
from main import main
from models.kappa import KappaPolynomial
from models.schemas import MomentRecord
from services.reference_data import CYLINDER_MOMENTS


class TestArgumentParsing:
    """Test cases for range and value parsing"""

    def test_parse_range(self):
        assert parse_range("4..6,9") == [4, 5, 6, 9]
        assert parse_range("7") == [7]
        assert parse_range("3,1,3") == [1, 3]

    def test_parse_range_errors(self):
        for text in ("6..4", "a", ",", "1..x"):
            with pytest.raises(argparse.ArgumentTypeError):
                parse_range(text)

    def test_parse_kappa_values(self):
        assert parse_kappa_values("1=0, 2=1/2") == {1: "0", 2: "1/2"}
        with pytest.raises(argparse.ArgumentTypeError):
            parse_kappa_values("k1")
        with pytest.raises(argparse.ArgumentTypeError):
            parse_kappa_values("1=abc")


class TestCommands:
    """Test cases for the subcommands end to end"""

    @pytest.fixture(autouse=True)
    def _cache_dir(self, tmp_path):
        self.cache_args = ["--cache-dir", str(tmp_path / "cache")]

    def run(self, capsys, *args):
        code = main([*args, *self.cache_args])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    def test_table_json(self, capsys):
        code, out, _ = self.run(capsys, "table", "--kind", "permutation", "--n", "3")
        assert code == 0
        (document,) = json.loads(out)
        assert document["n"] == 3
        assert document["schema_version"] == 1
        assert {"g": 1, "type": [3], "count": 1} in document["entries"]
        assert sum(e["count"] for e in document["entries"]) == 6

    def test_table_is_cached_and_deterministic(self, capsys, tmp_path):
        _, first, _ = self.run(capsys, "table", "--kind", "partition", "--n", "4")
        _, second, _ = self.run(capsys, "table", "--kind", "partition", "--n", "4")
        assert first == second
        assert list((tmp_path / "cache").glob("genus_table_partition_4_*.json"))

    def test_table_csv(self, capsys):
        code, out, _ = self.run(capsys, "table", "--kind", "partition", "--n", "4", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "record,kind,n,g,type,count"
        assert "genus_table,partition,4,1,2 2,1" in lines

    def test_global_options_before_subcommand(self, capsys):
        code, out, _ = self.run(capsys, "--format", "text", "table", "--n", "1")
        assert code == 0
        assert out.strip().splitlines() == ["# permutation n=1", "g=0 [1] 1"]

    def test_moments_generic(self, capsys):
        code, out, _ = self.run(capsys, "moments", "--kind", "permutation", "--g", "1", "--n", "4")
        assert code == 0
        (record,) = json.loads(out)
        assert KappaPolynomial.parse(record["poly"]) == KappaPolynomial.parse("4*k1*k3 + k2^2 + 5*k4")

    def test_moments_specialized(self, capsys):
        code, out, _ = self.run(capsys, "moments", "--g", "1", "--n", "3..5", "--preset", "factorials")
        assert code == 0
        assert [r["poly"] for r in json.loads(out)] == ["1", "10", "70"]

    def test_moments_custom_values(self, capsys):
        code, out, _ = self.run(capsys, "moments", "--kind", "partition", "--g", "1", "--n", "4",
                                "--preset", "custom", "--kappa", "2=3")
        assert code == 0
        assert json.loads(out)[0]["poly"] == "9"

    def test_custom_preset_needs_values(self, capsys):
        code, _, err = self.run(capsys, "moments", "--g", "1", "--n", "4", "--preset", "custom")
        assert code == 2
        assert "custom" in err

    def test_unsupported_partition_genus(self, capsys):
        code, _, err = self.run(capsys, "moments", "--kind", "partition", "--g", "3", "--n", "8")
        assert code == 1
        assert "error: No partition generating function for genus 3" in err

    def test_cylinder_text(self, capsys):
        code, out, _ = self.run(capsys, "cylinder", "--i", "1", "--j", "1..2", "--format", "text")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("part m_(1,1) = ")
        assert KappaPolynomial.parse(lines[0].split(" = ", 1)[1]) == KappaPolynomial.parse("k1_1 + k2")

    def test_cylinder_second_order_zero(self, capsys):
        code, out, _ = self.run(capsys, "cylinder", "--kind", "perm", "--i", "2", "--j", "2",
                                "--set-second-order-zero")
        assert code == 0
        (record,) = json.loads(out)
        assert KappaPolynomial.parse(record["poly"]) == KappaPolynomial.parse(
            "4*k4 + 8*k1*k3 + 2*k2^2 + 4*k1^2*k2"
        )

    def test_cylinder_cutoff_below_boundary_total_is_raised(self, capsys):
        code, out, _ = self.run(capsys, "cylinder", "--kind", "part", "--i", "2", "--j", "2", "--cutoff", "2")
        assert code == 0
        (record,) = json.loads(out)
        poly = KappaPolynomial.parse(record["poly"])
        assert poly == KappaPolynomial.parse(CYLINDER_MOMENTS[(2, 2)])
        assert poly.coefficient("k4") == 1

    def test_series_rows(self, capsys):
        code, out, _ = self.run(capsys, "series", "--preset", "factorials", "--g", "0..1", "--n", "3,4")
        assert code == 0
        records = json.loads(out)
        series = [r for r in records if "coeffs" in r]
        rows = [r for r in records if "by_genus" in r]
        assert [s["g"] for s in series] == [0, 1]
        assert series[0]["coeffs"][:5] == ["1", "1", "2", "5", "14"]
        assert [(r["n"], r["total"]) for r in rows] == [(3, "6"), (4, "24")]

    def test_series_symbolic_csv(self, capsys):
        code, out, _ = self.run(capsys, "series", "--preset", "stirling1", "--g", "1", "--n", "4",
                                "--format", "csv")
        assert code == 0
        assert "series,permutation,1,stirling1,4,5*k^2 + 5*k" in out.splitlines()

    def test_verify_pass(self, capsys):
        code, out, _ = self.run(capsys, "verify", "--checks", "factorial-sum,bell-sum", "--n", "6")
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True
        assert [c["name"] for c in report["checks"]] == ["factorial-sum", "bell-sum"]

    def test_verify_unknown_check(self, capsys):
        code, _, err = self.run(capsys, "verify", "--checks", "no-such-check")
        assert code == 1
        assert "no-such-check" in err

    def test_oracle_limit(self, capsys):
        code, _, err = self.run(capsys, "table", "--n", "5", "--oracle-limit", "4")
        assert code == 1
        assert "oracle" in err

    def test_bad_range_exits(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["table", "--n", "5..2"])
        assert exc.value.code == 2

    def test_missing_subcommand_exits(self, capsys):
        with pytest.raises(SystemExit):
            main([])


class TestRendering:
    """Test cases for output serialization"""

    def setup_method(self):
        self.output = CommandOutput([MomentRecord(kind="permutation", g=1, n=4, poly="k2^2 + 5*k4")])

    def test_csv_expands_polynomials(self):
        lines = render_output(self.output, "csv").splitlines()
        assert lines[0] == "record,kind,g,n,monomial,coefficient"
        assert lines[1:] == ["moment,permutation,1,4,k2^2,1", "moment,permutation,1,4,k4,5"]

    def test_text(self):
        assert render_output(self.output, "text") == "alpha_4^(1) = k2^2 + 5*k4"

    def test_json_default(self):
        assert json.loads(render_output(self.output))[0]["poly"] == "k2^2 + 5*k4"
