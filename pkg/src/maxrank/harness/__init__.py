"""Suites, configuration, reports and the command line interface."""

from .config import Config
from .suites import SUITES, SuiteReport, run_suite
from .typespec import parse_types

__all__ = ["Config", "SUITES", "SuiteReport", "run_suite", "parse_types"]
