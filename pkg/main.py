import argparse
import datetime
import logging
import os
import sys
from zoneinfo import ZoneInfo, ZoneInfoNotFoundError

from dotenv import load_dotenv
load_dotenv()

from cogs.tilting_commands import TiltingCommands
from utils import constants
from utils.errors import InputError


# 1. Timestamp formatter for the configured zone
class ZoneFormatter(logging.Formatter):
    """A logging formatter that renders timestamps in a fixed time zone."""
    def __init__(self, fmt=None, datefmt=None, tz: ZoneInfo | None = None):
        super().__init__(fmt, datefmt)
        self.tz = tz or ZoneInfo(constants.DEFAULT_LOG_TZ)

    def formatTime(self, record, datefmt=None):
        dt = datetime.datetime.fromtimestamp(record.created, tz=self.tz)
        if datefmt:
            return dt.strftime(datefmt)
        return dt.isoformat(timespec='milliseconds')


# 2. Configure the root logger; diagnostics go to stderr so reports on stdout stay clean
def setup_logging(level: int = logging.WARNING, tz: ZoneInfo | None = None):
    logger = logging.getLogger()
    logger.setLevel(level)
    if logger.hasHandlers():
        logger.handlers.clear()

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(ZoneFormatter(constants.LOG_FORMAT, datefmt=constants.LOG_DATE_FORMAT, tz=tz))
    logger.addHandler(handler)


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage problems as input errors instead of exiting."""
    def error(self, message):
        raise InputError(message)


def build_parser() -> CommandParser:
    parser = CommandParser(prog="tauglue", description="τ-tilting theory and gluing over idempotent recollements.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CommandParser)

    def add(name, help_text, cap=True, formats=("json",)):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("file", help="algebra file")
        cmd.add_argument("--length-cap", type=int, default=constants.DEFAULT_LENGTH_CAP,
                         help="longest path considered when building the algebra")
        cmd.add_argument("--format", dest="fmt", choices=formats, default="json")
        cmd.add_argument("--out", default=None, help="write the report here instead of stdout")
        if cap:
            cmd.add_argument("--cap", type=int, default=constants.DEFAULT_NODE_CAP,
                             help="largest number of exchange graph nodes to explore")
        return cmd

    add("check", "parse and build an algebra", cap=False)
    stt = add("stt", "enumerate support τ-tilting pairs", formats=("json", "csv", "dot"))
    stt.add_argument("--dim-cap", type=int, default=None,
                     help="also stop once a mutation produces a summand of larger dimension")
    glue = add("glue", "glue support τ-tilting pairs over the idempotent recollement", formats=("json", "csv"))
    glue.add_argument("--semibricks-only", action="store_true", help="glue semibricks without the middle enumeration")
    add("verify", "check the recollement identities")
    tau = add("tau", "compute the Auslander-Reiten translate of a module", cap=False)
    tau.add_argument("--module", required=True, help="module literal (P1, S2, I3) or JSON module file")
    return parser


class TauGlueApp:

    def __init__(self):
        # --- Load Configuration ---
        self.LOG_LEVEL = os.getenv("TAUGLUE_LOG_LEVEL", constants.DEFAULT_LOG_LEVEL).upper()
        self.LOG_TZ = os.getenv("TAUGLUE_LOG_TZ", constants.DEFAULT_LOG_TZ)

        # --- Validate Configuration ---
        level = logging.getLevelName(self.LOG_LEVEL)
        if not isinstance(level, int):
            logging.critical(f"TAUGLUE_LOG_LEVEL '{self.LOG_LEVEL}' is not a logging level.")
            sys.exit(f"Error: TAUGLUE_LOG_LEVEL '{self.LOG_LEVEL}' is not a logging level.")
        try:
            tz = ZoneInfo(self.LOG_TZ)
        except (ZoneInfoNotFoundError, ValueError):
            logging.critical(f"TAUGLUE_LOG_TZ '{self.LOG_TZ}' is not a known time zone.")
            sys.exit(f"Error: TAUGLUE_LOG_TZ '{self.LOG_TZ}' is not a known time zone.")

        setup_logging(level, tz)
        self.commands = TiltingCommands(self)

    def run(self, argv: list[str] | None = None) -> int:
        command = "tauglue"
        try:
            args = build_parser().parse_args(argv)
            command = args.command
            logging.info(f"Running '{command}' on {args.file}...")
            handler = getattr(self.commands, f"{command}_command")
            options = {"length_cap": args.length_cap, "fmt": args.fmt, "out": args.out}
            if command in ("stt", "glue", "verify"):
                options["cap"] = args.cap
            if command == "stt":
                options["dim_cap"] = args.dim_cap
            if command == "glue":
                options["semibricks_only"] = args.semibricks_only
            if command == "tau":
                options["module"] = args.module
            return handler(args.file, **options)
        except Exception as e:
            return self.commands.on_command_error(command, e)


def main(argv: list[str] | None = None) -> int:
    return TauGlueApp().run(argv)


if __name__ == "__main__":
    sys.exit(main())
