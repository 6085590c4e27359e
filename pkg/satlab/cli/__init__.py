"""Command-line subcommands and output formatting."""

from .commands import (
    EXIT_FAILED,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_USAGE,
    CommandHandlers,
    UsageError,
    build_parser,
)
from .templates import OutputTemplates

__all__ = [
    "EXIT_FAILED",
    "EXIT_INCONCLUSIVE",
    "EXIT_OK",
    "EXIT_USAGE",
    "CommandHandlers",
    "UsageError",
    "build_parser",
    "OutputTemplates",
]
