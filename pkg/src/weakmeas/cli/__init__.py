"""weakmeas CLI package.

This module provides the command-line tool `weakmeas`, which reads problem files and writes
machine-readable reports.
"""

from weakmeas.cli.common import logger
from weakmeas.cli.main import app, main

__all__ = [
    "app",
    "logger",
    "main",
]
