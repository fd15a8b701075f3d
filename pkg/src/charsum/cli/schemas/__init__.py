"""Pydantic schemas for CLI input and output."""
from .results import OutputFormat, SumReport
from .sweep import (
    CSV_COLUMNS,
    SUITES,
    BenchRow,
    BPolicy,
    DiscrepancyRecord,
    ReportFormat,
    Status,
    SweepConfig,
    SweepSummary,
)

__all__ = [
    "OutputFormat",
    "SumReport",
    "CSV_COLUMNS",
    "SUITES",
    "BenchRow",
    "BPolicy",
    "DiscrepancyRecord",
    "ReportFormat",
    "Status",
    "SweepConfig",
    "SweepSummary",
]
