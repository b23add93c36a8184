"""Common report models."""

from typing import Any, Dict, Optional

from pydantic import BaseModel, Field


class ErrorReport(BaseModel):
    """Machine-readable error report written on failure."""

    error: str = Field(..., description="Error message")
    error_code: str = Field(..., description="Machine-readable error code")
    exit_code: int = Field(..., description="Process exit code")
    experiment: Optional[str] = Field(None, description="Experiment being run")
    details: Optional[Dict[str, Any]] = Field(
        None, description="Additional error details"
    )


class HostMetrics(BaseModel):
    """Host resources recorded alongside a run."""

    cpu_count_physical: int = Field(..., description="Physical CPU cores")
    cpu_count_logical: int = Field(..., description="Logical CPU cores")
    memory_total_gb: float = Field(..., description="Total memory in GB")
    memory_percent: float = Field(..., description="Memory usage percentage")
    load_average: list[float] = Field(
        ..., description="System load average (1, 5, 15 min)"
    )
    rss_mb: float = Field(..., description="Resident set size of this process")
