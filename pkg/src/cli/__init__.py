"""Command-line surface: `exciton <command> [flags]`."""

import sys
from typing import Optional, Sequence

from src.core.config import settings
from src.core.exception_handlers import ExceptionHandlerRegistry
from src.core.logging_config import configure_logging, logger

from .commands import apply_config_file, build_parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse `argv`, run the selected command and return its exit code.

    0 success, 2 usage error, 3 numerical non-convergence, 4 I/O failure.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        apply_config_file(parser, argv)
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except Exception as exc:
        return ExceptionHandlerRegistry.exit_code_for(exc)

    try:
        configure_logging(args.log_level or settings.log_level)
    except ValueError:
        logger.error(f"Unknown log level: {args.log_level}")
        return 2
    logger.info(f"Running command: {args.command}")
    try:
        args.handler(args)
    except Exception as exc:
        return ExceptionHandlerRegistry.exit_code_for(exc)
    logger.info(f"Command {args.command} completed")
    return 0


__all__ = ["main"]
