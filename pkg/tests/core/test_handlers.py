"""Tests for error reports and exit codes."""

import json

from quench_lab.core.exceptions import (
    ArtifactWriteError,
    ConfigurationError,
    InsufficientDataError,
    StepDivergedError,
)
from quench_lab.core.handlers import (
    INTERNAL_ERROR_EXIT_CODE,
    build_report,
    handle_error,
    report_json,
)


class TestBuildReport:
    """Test conversion of exceptions into reports."""

    def test_known_error(self):
        """Test a library error keeps its code and details."""
        report = build_report(StepDivergedError(3, 1.5), "fig1")
        assert report.error_code == "STEP_DIVERGED"
        assert report.exit_code == 3
        assert report.experiment == "fig1"
        assert report.details == {"trajectory_id": 3, "time": 1.5}

    def test_unexpected_error_hides_message(self):
        """Test unexpected errors expose only their type."""
        report = build_report(RuntimeError("secret internals"))
        assert report.error == "An internal error occurred"
        assert report.error_code == "INTERNAL_ERROR"
        assert report.exit_code == INTERNAL_ERROR_EXIT_CODE
        assert report.details == {"error_type": "RuntimeError"}
        assert "secret" not in report_json(report)

    def test_report_json_omits_none(self):
        """Test None fields are left out of the JSON."""
        report = build_report(ArtifactWriteError("disk full"))
        data = json.loads(report_json(report))
        assert "experiment" not in data
        assert "details" not in data
        assert data["exit_code"] == 5


class TestHandleError:
    """Test logging, persistence and exit codes."""

    def test_configuration_error_exit_code(self, out_dir):
        """Test configuration errors exit with 2 and write error.json."""
        exc = ConfigurationError([{"field": "dt", "message": "dt must be positive"}])
        report, exit_code = handle_error(exc, "custom", out_dir)
        assert exit_code == 2
        written = json.loads((out_dir / "error.json").read_text())
        assert written["error_code"] == "INVALID_CONFIG"
        assert written["details"]["violations"][0]["field"] == "dt"

    def test_analysis_error_exit_code(self, out_dir):
        """Test analysis errors exit with 4."""
        exc = InsufficientDataError(2, 8, (0.1, 0.2))
        _, exit_code = handle_error(exc, None, out_dir)
        assert exit_code == 4

    def test_unexpected_error_exit_code(self, out_dir):
        """Test unexpected errors exit with the internal error code."""
        report, exit_code = handle_error(ZeroDivisionError("x"), "fig1", out_dir)
        assert exit_code == INTERNAL_ERROR_EXIT_CODE
        assert report.error_code == "INTERNAL_ERROR"

    def test_missing_directory_is_not_created(self, tmp_path):
        """Test no error.json is written when the run directory is absent."""
        target = tmp_path / "never-created"
        _, exit_code = handle_error(ArtifactWriteError("nope"), "fig1", target)
        assert exit_code == 5
        assert not target.exists()

    def test_without_out_dir(self):
        """Test handling works with nowhere to write."""
        report, exit_code = handle_error(StepDivergedError(0, 0.1))
        assert exit_code == 3
        assert report.experiment is None
