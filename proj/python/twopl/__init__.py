"""Two-phase locking membership analysis of database schedules."""

from ._twopl import AnalysisResult, Operation, Schedule, analyze, format, parse

__all__ = ["AnalysisResult", "Operation", "Schedule", "analyze", "format", "parse"]
