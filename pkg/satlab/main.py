"""
Main entry point for the satlab command line.
Loads configuration, sets up logging and runs one subcommand.
"""

import logging
import sys
from typing import List, Optional

from .cli import EXIT_USAGE, CommandHandlers, build_parser
from .config import Config
from .errors import ConfigError, SatlabError

logger = logging.getLogger(__name__)


def run(argv: Optional[List[str]] = None, handlers: Optional[CommandHandlers] = None) -> int:
    """
    Parse arguments and run the chosen subcommand.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])
        handlers: Handler instance, to redirect the streams

    Returns:
        Process exit status
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    handlers = handlers or CommandHandlers()
    try:
        Config.load_file(args.config)
    except ConfigError as e:
        handlers.stderr.write(f"satlab: config error: {e}\n")
        return EXIT_USAGE
    Config.setup_logging()
    errors = Config.validate()
    if errors:
        for error in errors:
            logger.error(f"Config error: {error}")
        return EXIT_USAGE

    try:
        return handlers.dispatch(args)
    except SatlabError as e:
        logger.error(f"{args.command}: {e}")
        handlers.stderr.write(f"satlab {args.command}: error: {e}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
