"""Command-line interface: argument parser and command handlers."""

from mhwalk.cli.commands import (
    EXIT_AUDIT_FAILED,
    EXIT_OK,
    HANDLERS,
    cmd_bench,
    cmd_check,
    cmd_simulate,
    cmd_walk,
    load_graph,
)
from mhwalk.cli.parser import build_parser

__all__ = [
    "EXIT_AUDIT_FAILED",
    "EXIT_OK",
    "HANDLERS",
    "build_parser",
    "cmd_bench",
    "cmd_check",
    "cmd_simulate",
    "cmd_walk",
    "load_graph",
]
