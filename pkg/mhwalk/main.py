"""Main entry point for the mhwalk command line."""

import logging
import sys
from typing import List, Optional

from mhwalk.cli import HANDLERS, build_parser
from mhwalk.errors import MhWalkError

logger = logging.getLogger(__name__)

EXIT_IO_ERROR = 1
EXIT_CONFIG_ERROR = 2


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Configure the root logger once for command-line use."""
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s", force=True)


def main(argv: Optional[List[str]] = None) -> int:
    """Run one mhwalk command.

    Returns:
        0 on success, 1 on I/O failure, 2 on invalid configuration or input,
        3 when an audit exceeds its tolerance
    """
    parser = build_parser(handlers=HANDLERS)
    args = parser.parse_args(argv)
    configure_logging(verbose=args.verbose, quiet=args.quiet)

    try:
        return args.handler(args)
    except OSError as e:
        logger.error(str(e))
        return EXIT_IO_ERROR
    except (MhWalkError, ValueError) as e:
        logger.error(str(e))
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
