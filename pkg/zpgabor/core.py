import logging
import sys
from typing import List, Optional

from zpgabor.cli.cli import UsageError, dispatch, parse_args, report_error
from zpgabor.config import get_settings
from zpgabor.errors import ZpGaborError


def setup_logging(level: Optional[str] = None) -> None:
    """Root logger to the configured log file and stderr; stdout carries JSON only."""
    settings = get_settings()
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file))
    logging.basicConfig(
        level=(level or settings.log_level).upper(),
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = parse_args(argv)
    except ZpGaborError as e:
        return report_error(e)
    try:
        setup_logging(args.log_level)
    except (ValueError, OSError) as e:
        return report_error(UsageError(f"cannot configure logging: {e}", {"log_level": args.log_level}))
    return dispatch(args)


if __name__ == "__main__":
    sys.exit(main())
