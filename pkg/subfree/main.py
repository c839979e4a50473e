#!/usr/bin/env python3
"""
Command-line entry point: python -m subfree.main <command> ...
"""

import argparse
import logging
import os
import sys

from subfree import __version__
from subfree.commands import invariants, jw, mc, pf
from subfree.config import load_settings
from subfree.errors import SubfreeError

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def build_parser(settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subfree",
        description="Principal graph invariants and Jones-Wenzl laws of subfactor planar algebras",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level", default=os.getenv("LOG_LEVEL", "warning"),
        choices=["debug", "info", "warning", "error"], help="logging level (stderr)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    pf.register(subparsers)
    invariants.register(subparsers)
    jw.register(subparsers)
    mc.register(subparsers, settings)
    return parser


def main(argv=None) -> int:
    try:
        settings = load_settings()
    except SubfreeError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code

    args = build_parser(settings).parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )
    options = {k: v for k, v in vars(args).items() if k != "func"}
    logger.info(f"subfree {__version__}: {args.command} {options}")

    try:
        return args.func(args)
    except SubfreeError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        logger.info("Received interrupt signal, shutting down...")
        return 130


if __name__ == "__main__":
    sys.exit(main())
