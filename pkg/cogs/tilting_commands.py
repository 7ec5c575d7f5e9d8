import logging
import sys
from pathlib import Path

from cogs.helpers import reports
from utils import constants
from utils.algebra_file import AlgebraSpec, parse_algebra_file
from utils.errors import (
    CapExceeded, InputError, InternalAssertion, MissingIdempotent, TauGlueError, VerificationFailed,
)
from utils.recollement import Recollement, glue_semibrick_table, glue_table, transfer_check, verify_recollement
from utils.rep import module_literal
from utils.serialization import dumps, graph_to_dot, load_module
from utils.taumod import enumerate_stt, is_stt_pair

FORMATS = {
    "check": ("json",),
    "stt": ("json", "csv", "dot"),
    "glue": ("json", "csv"),
    "verify": ("json",),
    "tau": ("json",),
}


class TiltingCommands:
    """One method per CLI command; each returns a process exit code."""

    def __init__(self, app):
        self.app = app

    # --- Helpers ---

    def _load(self, path, length_cap):
        logging.info(f"Loading {path}...")
        spec = parse_algebra_file(path)
        algebra = spec.build(length_cap)
        logging.info(f"Algebra {algebra.name} loaded (dim {algebra.dim}).")
        return spec, algebra

    def _recollement(self, spec: AlgebraSpec, algebra) -> Recollement:
        if spec.idempotent is None:
            raise MissingIdempotent(f"{spec.source}: no 'idempotent' line")
        return Recollement.from_idempotent(algebra, spec.idempotent)

    def _emit(self, text: str, out: str | None):
        if out:
            Path(out).write_text(text, encoding="utf-8")
            logging.info(f"✅ Report written to {out}")
        else:
            sys.stdout.write(text)

    def _check_format(self, command: str, fmt: str):
        if fmt not in FORMATS[command]:
            raise InputError(f"format '{fmt}' is not available for '{command}'")

    # --- Algebra Commands ---

    def check_command(self, path, length_cap=constants.DEFAULT_LENGTH_CAP, fmt="json", out=None) -> int:
        self._check_format("check", fmt)
        spec, algebra = self._load(path, length_cap)
        rec = self._recollement(spec, algebra) if spec.idempotent is not None else None
        self._emit(dumps(reports.algebra_report(algebra, rec)), out)
        return constants.EXIT_OK

    # --- Exchange Graph & Gluing ---

    def stt_command(self, path, cap=constants.DEFAULT_NODE_CAP, length_cap=constants.DEFAULT_LENGTH_CAP,
                    fmt="json", out=None, dim_cap=None) -> int:
        self._check_format("stt", fmt)
        _, algebra = self._load(path, length_cap)
        logging.info("Enumerating support τ-tilting pairs...")
        graph = enumerate_stt(algebra, cap, dim_cap)
        logging.info(f"Exchange graph has {len(graph.nodes)} nodes.")
        for node in graph.nodes:
            if not is_stt_pair(node.module, node.projective_module):
                raise VerificationFailed(f"node {node.certificate} is not a support τ-tilting pair", [node])
        if fmt == "dot":
            text = graph_to_dot(graph)
        elif fmt == "csv":
            text = reports.to_csv(reports.stt_rows(graph), constants.STT_CSV_COLUMNS)
        else:
            text = dumps(reports.stt_payload(graph))
        self._emit(text, out)
        if not graph.complete:
            logging.warning(f"⚠️ Enumeration of {algebra.name} stopped early (cap {cap}).")
            return constants.EXIT_CAP_EXCEEDED
        return constants.EXIT_OK

    def glue_command(self, path, cap=constants.DEFAULT_NODE_CAP, length_cap=constants.DEFAULT_LENGTH_CAP,
                     fmt="json", out=None, semibricks_only=False) -> int:
        self._check_format("glue", fmt)
        spec, algebra = self._load(path, length_cap)
        rec = self._recollement(spec, algebra)
        logging.info("Gluing...")
        table = glue_semibrick_table(rec, cap) if semibricks_only else glue_table(rec, cap)
        logging.info(f"Glued {table.glued_count} rows.")
        if fmt == "csv":
            if semibricks_only:
                text = reports.to_csv(reports.semibrick_rows(table), constants.SEMIBRICK_CSV_COLUMNS)
            else:
                text = reports.to_csv(reports.glue_rows(table), constants.GLUE_CSV_COLUMNS)
        else:
            text = dumps(reports.glue_payload(table))
        self._emit(text, out)
        return constants.EXIT_OK

    # --- Verification ---

    def verify_command(self, path, cap=constants.DEFAULT_NODE_CAP, length_cap=constants.DEFAULT_LENGTH_CAP,
                       fmt="json", out=None) -> int:
        self._check_format("verify", fmt)
        spec, algebra = self._load(path, length_cap)
        rec = self._recollement(spec, algebra)
        logging.info("Checking recollement identities...")
        report = verify_recollement(rec, cap=cap)
        transfer = transfer_check(rec, cap)
        self._emit(dumps(reports.verification_payload(report, transfer)), out)
        report.raise_for_failures()
        if not transfer.holds:
            raise VerificationFailed("τ-tilting finiteness did not pass from the middle algebra to both sides", [])
        return constants.EXIT_OK

    # --- Single Modules ---

    def tau_command(self, path, module, length_cap=constants.DEFAULT_LENGTH_CAP, fmt="json", out=None) -> int:
        self._check_format("tau", fmt)
        _, algebra = self._load(path, length_cap)
        if Path(module).suffix == ".json" and Path(module).is_file():
            target = load_module(module, algebra)
        else:
            target = module_literal(algebra, module)
        self._emit(dumps(reports.tau_payload(target)), out)
        return constants.EXIT_OK

    # --- Error Handling ---

    def on_command_error(self, command: str, error: Exception) -> int:
        if isinstance(error, InternalAssertion):
            logging.error(f"Internal assertion in command '{command}':", exc_info=error)
        elif isinstance(error, TauGlueError):
            logging.debug(f"Command '{command}' failed: {error}")
        else:
            logging.error(f"Unexpected error in command '{command}':", exc_info=error)
            print(f"error: internal failure: {error}", file=sys.stderr)
            return constants.EXIT_VERIFICATION_FAILED

        print(f"error: {error}", file=sys.stderr)
        if isinstance(error, VerificationFailed):
            for failure in error.failures[:10]:
                print(f"  failed: {failure}", file=sys.stderr)
        elif isinstance(error, CapExceeded):
            print("  raise --cap to continue the enumeration", file=sys.stderr)
        return error.exit_code
