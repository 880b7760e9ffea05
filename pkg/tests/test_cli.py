"""
Command line tests for halfstrip.
"""

import json

import numpy as np
import pytest

from halfstrip.cli import EXIT_FAIL, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, main
from halfstrip.cli.config import RunConfig
from halfstrip.cli.fnspec import parse_function, parse_point, parse_points, parse_reals
from halfstrip.exceptions import ConfigurationError, FunctionSpecError
from halfstrip.verify import Check, CheckOutcome, get_check, registry


@pytest.fixture
def replace_check(monkeypatch):
    """Swap the runner of a registered check for the duration of a test."""

    def replace(check_id, outcome):
        check = get_check(check_id)
        monkeypatch.setitem(
            registry._REGISTRY,
            check_id,
            Check(
                check_id=check.check_id,
                title=check.title,
                runner=lambda params: outcome,
                tags=check.tags,
                defaults=check.defaults,
                ceiling=check.ceiling,
            ),
        )

    return replace


class TestFunctionSpec:
    """Tests for the function mini-language."""

    def test_parse_function(self):
        """Test the building blocks combine like Python expressions."""
        expr = parse_function("pole(2) + 0.5*expw(1) - scale(2j, pole(-0.5j, 2))")
        w = 0.3 + 0.7j
        expected = 1 / (w - 2) + 0.5 * np.exp(1j * w) - 2j / (w + 0.5j) ** 2
        assert expr(w) == pytest.approx(expected)

    def test_powers_and_constants(self):
        """Test integer powers and constants."""
        assert parse_function("pole(3+1j)**2")(0.5j) == pytest.approx((0.5j - 3 - 1j) ** -2)
        assert parse_function("const(2) * pole(2)")(1j) == pytest.approx(2 / (1j - 2))

    @pytest.mark.parametrize(
        "text",
        [
            "pole(",
            "__import__('os')",
            "pole(1, 0)",
            "pole(1, 1.5)",
            "expw(1j)",
            "foo(1)",
            "pole(2) ** 0.5",
            "pole(2) / pole(3)",
            "pole(w0=2)",
        ],
    )
    def test_invalid_functions(self, text):
        """Test anything outside the language is refused."""
        with pytest.raises(FunctionSpecError):
            parse_function(text)

    def test_points(self):
        """Test point lists accept commas and semicolons."""
        assert parse_points("3, 0.5j; -2-1j") == [3, 0.5j, -2 - 1j]
        assert parse_point(" -0.5+2j ") == -0.5 + 2j
        assert parse_reals("1.25,2") == (1.25, 2.0)

    def test_invalid_points(self):
        """Test malformed point lists."""
        with pytest.raises(FunctionSpecError):
            parse_points(" , ")
        with pytest.raises(FunctionSpecError):
            parse_reals("1, 2j")
        with pytest.raises(FunctionSpecError):
            parse_point("abc")


class TestRunConfig:
    """Tests for the run configuration file."""

    def test_defaults_from_settings(self, monkeypatch):
        """Test defaults track the environment."""
        monkeypatch.setenv("HALFSTRIP_GRID_DEPTH", "10")
        assert RunConfig().depth == 10

    def test_from_text(self):
        """Test comments, blank lines and exponent lists."""
        config = RunConfig.from_text("# run\nsigma = 2.0\n\np = 1.25, 2  # sweep\ndepth=8\n")
        assert config.sigma == 2.0
        assert config.p == (1.25, 2.0)
        assert config.depth == 8

    def test_text_is_reloadable(self):
        """Test the written file reads back to the same configuration."""
        config = RunConfig(sigma=0.5, p=(1.5,), depth=10, output="out.csv", format="csv")
        assert RunConfig.from_text(config.to_text()) == config

    @pytest.mark.parametrize(
        "text",
        [
            "colour = red",
            "sigma",
            "sigma = 1\nsigma = 2",
            "depth = ten",
            "depth = 40",
            "sigma = -1",
            "format = xml",
            "threads = 0",
        ],
    )
    def test_invalid(self, text):
        """Test malformed files raise ConfigurationError."""
        with pytest.raises(ConfigurationError):
            RunConfig.from_text(text)

    def test_override_ignores_none(self):
        """Test unset flags keep the file values."""
        config = RunConfig(depth=8).override(depth=None, sigma=2.0)
        assert config.depth == 8 and config.sigma == 2.0

    def test_missing_file(self, tmp_path):
        """Test an unreadable file is a configuration error."""
        with pytest.raises(ConfigurationError):
            RunConfig.load(str(tmp_path / "absent.cfg"))


class TestMain:
    """Tests for the command line entry point."""

    def test_usage(self):
        """Test argument errors exit with the usage code."""
        assert main([]) == EXIT_USAGE
        assert main(["verify", "--p"]) == EXIT_USAGE
        assert main(["--help"]) == EXIT_OK

    def test_config(self, capsys, tmp_path):
        """Test printing, writing and reloading the configuration."""
        assert main(["config", "--sigma", "2"]) == EXIT_OK
        assert "sigma = 2.0" in capsys.readouterr().out

        path = tmp_path / "run.cfg"
        assert main(["config", "--depth", "8", "--write", str(path)]) == EXIT_OK
        assert "depth = 8" in path.read_text()
        assert main(["config", "--config", str(path), "--seed", "5"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "depth = 8" in out and "seed = 5" in out

    def test_config_invalid(self):
        """Test invalid values exit with the usage code."""
        assert main(["config", "--depth", "30"]) == EXIT_USAGE
        assert main(["config", "--p", "1, 2j"]) == EXIT_USAGE

    def test_map_csv(self, capsys):
        """Test tables default to CSV on stdout."""
        assert main(["map", "--which", "phi+", "--at", "0, 1"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "z_re,z_im,image_re,image_im"
        assert [float(cell) for cell in lines[2].split(",")] == pytest.approx([1, 0, 1, 0])

    def test_map_json(self, capsys):
        """Test JSON tables are lists of named records."""
        assert main(["map", "--which", "phi-", "--at", "-1", "--format", "json"]) == EXIT_OK
        (record,) = json.loads(capsys.readouterr().out)
        assert record["image_re"] == pytest.approx(-1.0)

    def test_map_outside_domain(self, capsys):
        """Test a point outside the domain is a usage error."""
        assert main(["map", "--which", "psi-", "--at", "0.5j"]) == EXIT_USAGE
        assert "error:" in capsys.readouterr().err

    def test_eval(self, capsys, tmp_path):
        """Test the Cauchy transform table written to a file."""
        path = tmp_path / "cauchy.csv"
        argv = ["eval", "cauchy", "--fn", "pole(2)", "--at", "0.5j", "--output", str(path)]
        assert main(argv) == EXIT_OK
        header, row = path.read_text().splitlines()
        assert header == "w_re,w_im,region,value_re,value_im,error_estimate"
        cells = row.split(",")
        assert cells[2] == "Omega+"
        assert complex(float(cells[3]), float(cells[4])) == pytest.approx(1 / (0.5j - 2))

    def test_eval_errors(self):
        """Test points on Gamma and bad functions are usage errors."""
        assert main(["eval", "cauchy", "--fn", "pole(2)", "--at", "0.5"]) == EXIT_USAGE
        assert main(["eval", "cauchy", "--fn", "pole(", "--at", "0.5j"]) == EXIT_USAGE

    def test_norm(self, capsys):
        """Test the norm grid carries one block per exponent."""
        argv = ["norm", "--fn", "expw(1)", "--p", "1, 2", "--depth", "4"]
        assert main(argv) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "p,s,t,m"
        assert len(lines) == 1 + 2 * 4

    def test_verify_json(self, capsys):
        """Test a passing check exits 0 with a JSON report and a summary."""
        assert main(["verify", "--check", "CHK-M2"]) == EXIT_OK
        captured = capsys.readouterr()
        (record,) = json.loads(captured.out)
        assert record["check_id"] == "CHK-M2"
        assert record["verdict"] == "pass"
        assert "VERIFICATION SUMMARY" in captured.err

    def test_verify_csv(self, capsys):
        """Test the CSV report columns."""
        assert main(["verify", "--check", "CHK-M2", "--format", "csv"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "check_id,paper_ref,samples,max_violation,tolerance,verdict,runtime_ms"
        assert lines[1].startswith("CHK-M2,")

    def test_verify_usage(self):
        """Test conflicting selections and unknown ids."""
        assert main(["verify", "--check", "CHK-M2", "--all"]) == EXIT_USAGE
        assert main(["verify", "--check", "CHK-ZZ"]) == EXIT_USAGE
        assert main(["verify", "--tag", "nothing"]) == EXIT_USAGE

    def test_verify_fail(self, replace_check):
        """Test a failing check exits 1."""
        replace_check("CHK-M2", CheckOutcome(max_violation=1.0, samples=1))
        assert main(["verify", "--check", "CHK-M2"]) == EXIT_FAIL

    def test_verify_inconclusive(self, replace_check):
        """Test an inconclusive check exits 3."""
        replace_check("CHK-M2", CheckOutcome(max_violation=0.0, converged=False))
        assert main(["verify", "--check", "CHK-M2"]) == EXIT_NUMERICAL

    def test_fail_wins_over_inconclusive(self, replace_check):
        """Test a failure takes precedence over an inconclusive result."""
        replace_check("CHK-M2", CheckOutcome(max_violation=0.0, converged=False))
        replace_check("CHK-K2", CheckOutcome(max_violation=1.0))
        argv = ["verify", "--check", "CHK-M2", "--check", "CHK-K2"]
        assert main(argv) == EXIT_FAIL
