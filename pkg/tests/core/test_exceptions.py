"""Tests for custom exceptions."""

from quench_lab.core.exceptions import (
    AnalysisError,
    ArtifactError,
    ArtifactWriteError,
    ConfigurationError,
    IllConditionedError,
    InsufficientDataError,
    InvalidInputError,
    NoConvergenceError,
    NumericalError,
    QuenchLabError,
    StepDivergedError,
    ValidationError,
)


class TestQuenchLabError:
    """Test base exception class."""

    def test_basic_creation(self):
        """Test creating basic exception."""
        exc = QuenchLabError("Test error")
        assert str(exc) == "Test error"
        assert exc.message == "Test error"
        assert exc.exit_code == 1
        assert exc.error_code == "QuenchLabError"
        assert exc.details == {}

    def test_with_all_params(self):
        """Test creating exception with all parameters."""
        exc = QuenchLabError(
            "Test error", exit_code=7, error_code="TEST", details={"key": "value"}
        )
        assert exc.exit_code == 7
        assert exc.error_code == "TEST"
        assert exc.details == {"key": "value"}


class TestExitCodes:
    """Test the exit code carried by each error family."""

    def test_validation_family(self):
        """Test validation errors exit with 2."""
        assert ValidationError("bad").exit_code == 2
        assert InvalidInputError("bad").exit_code == 2
        assert InvalidInputError("bad").error_code == "InvalidInputError"

    def test_numerical_family(self):
        """Test numerical errors exit with 3."""
        assert NumericalError("boom").exit_code == 3
        exc = StepDivergedError(trajectory_id=12, time=3.5)
        assert exc.exit_code == 3
        assert exc.error_code == "STEP_DIVERGED"
        assert exc.details == {"trajectory_id": 12, "time": 3.5}
        assert "Trajectory 12 diverged" in exc.message

    def test_no_convergence_index(self):
        """Test the unconverged index travels in details."""
        assert NoConvergenceError("stuck", index=4).details == {"index": 4}
        assert NoConvergenceError("stuck").details == {}

    def test_analysis_family(self):
        """Test analysis errors exit with 4."""
        assert AnalysisError("fit").exit_code == 4
        exc = InsufficientDataError(found=3, required=8, window=(0.01, 0.3))
        assert exc.error_code == "INSUFFICIENT_DATA"
        assert exc.details["window"] == [0.01, 0.3]
        assert IllConditionedError(1e13, 1e12).exit_code == 4

    def test_artifact_write_error(self):
        """Test artifact failures exit with 5."""
        exc = ArtifactWriteError("disk full", details={"path": "/x"})
        assert exc.exit_code == 5
        assert exc.error_code == "ARTIFACT_WRITE_ERROR"
        assert isinstance(exc, ArtifactError)
        assert ArtifactError("unreadable").exit_code == 5


class TestConfigurationError:
    """Test aggregated configuration violations."""

    def test_violations_are_kept(self):
        """Test every violation reaches message and details."""
        violations = [
            {"field": "dt", "message": "dt must be positive"},
            {"field": "bins", "message": "too small"},
        ]
        exc = ConfigurationError(violations)
        assert exc.exit_code == 2
        assert exc.error_code == "INVALID_CONFIG"
        assert exc.violations == violations
        assert exc.details == {"violations": violations}
        assert "dt: dt must be positive" in exc.message
        assert "bins: too small" in exc.message
