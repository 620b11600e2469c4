"""
Командная строка chiralflow
"""

from chiralflow.api.cli.commands import build_parser, run_cli

__all__ = ["build_parser", "run_cli"]
