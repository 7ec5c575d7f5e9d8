import csv
import io

from utils import constants
from utils.algebra import BasedAlgebra
from utils.recollement import GlueTable, Recollement, TransferReport, VerificationReport
from utils.rep import Module
from utils.serialization import (
    graph_to_json, notation, pair_notation, pair_to_json, semibrick_notation, semibrick_to_json,
)
from utils.structure import brick_report
from utils.taumod import ExchangeGraph, ar_translate, is_tau_rigid, semibrick_of


def to_csv(rows: list[dict], columns: list[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


# --- check ---

def algebra_report(algebra: BasedAlgebra, rec: Recollement | None = None) -> dict:
    report = {
        "algebra": algebra.name,
        "dim": algebra.dim,
        "vertices": list(algebra.vertices),
        "basis": list(algebra.basis),
        "radical_dim": algebra.radical.dim,
    }
    if rec is not None:
        report["idempotent"] = [algebra.vertices[v] for v in rec.subset]
        report["corner_dim"] = rec.right.dim
        report["quotient_dim"] = rec.left.dim
    return report


# --- stt ---

def stt_payload(graph: ExchangeGraph) -> dict:
    return graph_to_json(graph)


def stt_rows(graph: ExchangeGraph) -> list[dict]:
    rows = []
    for node in graph.nodes:
        payload = pair_to_json(node)
        rows.append({
            "id": payload["id"],
            "module": payload["module"],
            "projectives": " ".join(payload["projectives"]),
            "dims": " ".join(str(d) for d in payload["dims"]),
            "semibrick": "{" + ", ".join(payload["semibrick"]) + "}",
        })
    return rows


# --- glue ---

def glue_payload(table: GlueTable) -> dict:
    rec = table.rec
    rows = []
    for row in table.rows:
        rows.append({
            "left": pair_to_json(row.left),
            "right": pair_to_json(row.right),
            "glued": pair_to_json(row.glued) if row.glued is not None else None,
            "semibrick": semibrick_to_json(row.semibrick),
            "semibrick_notation": [notation(b) for b in row.semibrick],
        })
    payload = {
        "algebra": rec.middle.name,
        "idempotent": [rec.middle.vertices[v] for v in rec.subset],
        "left_count": len(table.left_graph.nodes),
        "right_count": len(table.right_graph.nodes),
        "glued_count": table.glued_count,
        "nonempty_count": table.nonempty_count,
        "injective": table.is_injective(),
        "rows": rows,
    }
    if table.middle_graph is not None:
        payload["middle_count"] = len(table.middle_graph.nodes)
    return payload


def glue_rows(table: GlueTable) -> list[dict]:
    left, middle, right, semibrick = constants.GLUE_CSV_COLUMNS
    return [
        {
            left: pair_notation(row.left),
            middle: pair_notation(row.glued),
            right: pair_notation(row.right),
            semibrick: semibrick_notation(row.semibrick),
        }
        for row in table.rows
    ]


def semibrick_rows(table: GlueTable) -> list[dict]:
    left, right, semibrick = constants.SEMIBRICK_CSV_COLUMNS
    return [
        {
            left: semibrick_notation(semibrick_of(row.left)),
            right: semibrick_notation(semibrick_of(row.right)),
            semibrick: semibrick_notation(row.semibrick),
        }
        for row in table.rows
    ]


# --- verify ---

def verification_payload(report: VerificationReport, transfer: TransferReport) -> dict:
    return {
        "passed": report.passed and transfer.holds,
        "check_count": len(report.checks),
        "failure_count": len(report.failures),
        "checks": [
            {"identity": c.identity, "sample": c.sample, "passed": c.passed, "detail": c.detail}
            for c in report.checks
        ],
        "transfer": {
            "middle_complete": transfer.middle_complete,
            "left_complete": transfer.left_complete,
            "right_complete": transfer.right_complete,
            "holds": transfer.holds,
        },
    }


# --- tau ---

def tau_payload(module: Module) -> dict:
    tau = ar_translate(module)
    bricks = brick_report(module)
    return {
        "module": notation(module),
        "dims": list(module.dims),
        "tau": notation(tau),
        "tau_dims": list(tau.dims),
        "tau_rigid": is_tau_rigid(module),
        "brick": bricks.is_brick,
        "end_dim": bricks.end_dim,
        "end_radical_dim": bricks.radical_dim,
        "flag": bricks.flag,
    }
