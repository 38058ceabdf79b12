from argparse import ArgumentParser
from typing import List, Optional, Sequence
import logging
import sys

from etakit.cli.commands import eta, lk, schema, verify
from etakit.core.config import get_settings
from etakit.core.exceptions import EtakitError
from etakit.core.logging import setup_logging
from etakit.core.middleware import timed_command

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED_CHECKS, EXIT_ERROR = 0, 1, 2


def build_parser() -> ArgumentParser:
    settings = get_settings()
    parser = ArgumentParser(
        prog="etakit",
        description="eta polynomials of strongly invertible knots, cover-space cross-checks "
                    "and fundamental group certification"
    )
    parser.add_argument("--json", action="store_true", help="print the run report as JSON")
    parser.add_argument("--corpus", help=f"corpus directory (default {settings.ETAKIT_CORPUS})")
    parser.add_argument("--log-level", help=f"log level (default {settings.ETAKIT_LOG_LEVEL})")
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")

    commands = parser.add_subparsers(dest="command", metavar="{eta,verify,lk,schema}")
    commands.required = True
    eta.register(commands)
    verify.register(commands)
    lk.register(commands)
    schema.register(commands)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv: List[str] = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    setup_logging(args.log_level)

    name = args.command if args.command != "verify" else f"verify {args.check}"
    try:
        with timed_command(name) as timing:
            report, lines = args.handler(args)
    except EtakitError as e:
        logger.error(f"{name} failed: {str(e)}", extra={"command": name})
        print(f"etakit: error: {str(e)}", file=sys.stderr)
        return EXIT_ERROR

    report = report.timed(timing["wall_time_ms"])
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print("\n".join(lines))
    return EXIT_OK if report.ok else EXIT_FAILED_CHECKS
