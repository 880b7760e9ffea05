"""
Service tests for halfstrip.
"""

import numpy as np
import pytest

from halfstrip.backends.base import BaseTableWriter, WriteResult
from halfstrip.backends.csv_report import CsvTableWriter
from halfstrip.backends.json_report import JsonReportWriter
from halfstrip.conformal import phi_plus
from halfstrip.functions import ExpW, Pole
from halfstrip.services import experiments, output
from halfstrip.verify import VerificationReport


class RecordingTableWriter(BaseTableWriter):
    """Table writer keeping what it was given."""

    def __init__(self):
        self.tables = []

    def write_table(self, header, rows, path=None):
        self.tables.append((list(header), list(rows)))
        return WriteResult(success=True, metadata={"rows": len(self.tables[-1][1])})


class TestOutputService:
    """Tests for the output service."""

    def test_default_writers(self):
        """Test the configured defaults are loaded and cached."""
        assert isinstance(output.get_report_writer(), JsonReportWriter)
        assert isinstance(output.get_table_writer(), CsvTableWriter)
        assert output.get_table_writer() is output.get_table_writer()

    def test_backend_from_settings(self, monkeypatch):
        """Test HALFSTRIP_TABLE_BACKEND selects the writer class."""
        monkeypatch.setenv("HALFSTRIP_TABLE_BACKEND", "tests.test_services.RecordingTableWriter")
        output.reset_writers()
        result = output.write_table(["a"], [[1.0]])
        writer = output.get_table_writer()
        assert result.success is True
        assert isinstance(writer, RecordingTableWriter)
        assert writer.tables == [(["a"], [[1.0]])]

    def test_write_reports(self, tmp_path):
        """Test report objects go through their JSON record."""
        report = VerificationReport(
            check_id="CHK-M2",
            paper_ref="anchor",
            params={"sigma": 1.0},
            samples=4,
            max_violation=0.0,
            tolerance=0.0,
            verdict="pass",
        )
        path = tmp_path / "out.json"
        assert output.write_reports([report], str(path)).success
        assert '"samples": 4' in path.read_text()


class TestMapService:
    """Tests for the conformal map runner."""

    def test_map_points(self, run_config):
        """Test images of the requested map."""
        result = experiments.map_points("phi+", [0.5j, 2.0], run_config)
        assert result["success"] is True
        assert result["header"] == ["z_re", "z_im", "image_re", "image_im"]
        assert result["rows"][0][1] == pytest.approx(phi_plus(0.5j))

    def test_unknown_map(self, run_config):
        """Test an unknown map name is a usage failure."""
        result = experiments.map_points("phi", [0.5j], run_config)
        assert result["success"] is False
        assert result["numerical"] is False

    def test_outside_domain(self, run_config):
        """Test a point outside the map's domain fails cleanly."""
        result = experiments.map_points("psi-", [0.5j], run_config)
        assert result["success"] is False
        assert result["numerical"] is False


class TestCauchyService:
    """Tests for the Cauchy transform runner."""

    def test_evaluate(self, run_config):
        """Test the transform reproduces a plus function and vanishes outside."""
        result = experiments.evaluate_cauchy(Pole(2.0), [0.3 + 0.5j, 3 + 1j], run_config)
        assert result["success"] is True
        inside, outside = result["rows"]
        assert inside[1] == "Omega+"
        assert inside[2] == pytest.approx(1 / (0.3 + 0.5j - 2.0), abs=1e-8)
        assert abs(outside[2]) < 1e-8
        assert result["accurate"] is True

    def test_on_contour(self, run_config):
        """Test points of Gamma are refused."""
        result = experiments.evaluate_cauchy(Pole(2.0), [0.5], run_config)
        assert result["success"] is False

    def test_boundary_pole(self, run_config):
        """Test a pole on Gamma is a usage failure."""
        result = experiments.evaluate_cauchy(Pole(0.5), [0.5j], run_config)
        assert result["success"] is False
        assert result["numerical"] is False

    def test_decompose(self, run_config):
        """Test the jump components on each side."""
        expr = Pole(2.0) + Pole(0.5j)
        result = experiments.decompose_points(expr, [0.2 + 0.4j, 2 - 1j], run_config)
        assert result["success"] is True
        assert result["header"] == experiments.DECOMPOSE_HEADER
        plus_row, minus_row = result["rows"]
        assert plus_row[2] == pytest.approx(1 / (0.2 + 0.4j - 2.0), abs=1e-8)
        assert np.isnan(plus_row[3].real)
        assert minus_row[3] == pytest.approx(1 / (2 - 1j - 0.5j), abs=1e-8)

    @pytest.mark.slow
    def test_limit_table(self, run_config):
        """Test the approach table ends near the boundary value."""
        result = experiments.limit_table(Pole(2.0), 0.5, 1.0, run_config)
        assert result["success"] is True
        assert result["limit"] == pytest.approx(1 / (0.5 - 2.0), abs=1e-5)
        distances = [row[2] for row in result["rows"]]
        assert distances[-1] < distances[0]


class TestNormService:
    """Tests for the H^p norm grid runner."""

    def test_norm_grid(self, run_config):
        """Test one grid row per contour and a finite estimate."""
        result = experiments.norm_grid(ExpW(1.0), 2.0, "plus", run_config)
        assert result["success"] is True
        assert result["header"] == ["s", "t", "m"]
        assert len(result["rows"]) == run_config.depth
        assert result["value"] == pytest.approx(np.sqrt(3.0), rel=5e-2)

    def test_invalid_exponent(self, run_config):
        """Test p <= 0 is refused."""
        assert experiments.norm_grid(ExpW(1.0), 0.0, "plus", run_config)["success"] is False


class TestVerifyService:
    """Tests for the verification runner."""

    def test_named_check(self, run_config):
        """Test running one check by id."""
        result = experiments.verify_checks(run_config, ["CHK-M2"])
        assert result["success"] is True
        (report,) = result["reports"]
        assert report.check_id == "CHK-M2"
        assert result["summary"]["pass"] == 1

    def test_unknown_check(self, run_config):
        """Test an unknown id fails without running anything."""
        result = experiments.verify_checks(run_config, ["CHK-ZZ"])
        assert result["success"] is False
        assert "CHK-ZZ" in result["error"]

    def test_unknown_tag(self, run_config):
        """Test a tag carried by no check is refused."""
        result = experiments.verify_checks(run_config, tags=["nothing"])
        assert result["success"] is False
