"""
Command dispatch and the exit-code contract: 0 success, 1 failed check or numerical
failure, 2 usage or configuration error.
"""

from __future__ import annotations

import sys
from collections.abc import Sequence

from loguru import logger

from src.core.config.manager import RunConfig, build_parser, parse_config
from src.core.numerics.errors import (
    ConfigError,
    DecayClassError,
    DomainError,
    DunklHermiteError,
)
from src.core.services.logger import setup_exception_handler, setup_root_logger

from .commands import COMMAND_HANDLERS, Artifacts

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

log = logger.bind(name="DunklHermite.App")


def run(command: str, cfg: RunConfig) -> int:
    """Run one command; on any error the artifacts written so far are removed."""
    handler = COMMAND_HANDLERS.get(command)
    if handler is None:
        log.error(f"Unknown command {command!r}")
        return EXIT_USAGE
    artifacts = Artifacts()
    log.info(f"Running {command} ({cfg.parameter()}, N={cfg.N})")
    try:
        return handler(cfg, artifacts)
    except (ConfigError, DomainError, DecayClassError) as e:
        artifacts.discard()
        log.error(f"{command}: {e}")
        return EXIT_USAGE
    except (DunklHermiteError, ArithmeticError) as e:
        artifacts.discard()
        log.error(f"{command} failed: {type(e).__name__}: {e}")
        return EXIT_FAILURE
    except BaseException:
        artifacts.discard()
        raise


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, configure logging, dispatch."""
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(args)
    except ConfigError as e:
        setup_root_logger(debug=False)
        log.error(f"Configuration error: {e}")
        return EXIT_USAGE

    setup_root_logger(debug=cfg.debug, log_filename=cfg.log_file)
    setup_exception_handler()

    if cfg.command is None:
        build_parser().print_help(sys.stderr)
        return EXIT_USAGE
    return run(cfg.command, cfg)
