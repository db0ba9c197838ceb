"""Run-report assembly, JSON/CSV serialisation and schema validation.

Report files are deterministic: identical configurations produce
byte-identical output. Host wall-clock timing therefore never enters a
report file. The JSON schema shipped under ``schemas/`` is the published
contract; every emitted document is validated against it before writing.
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources

from .sim.ledger import COUNTER_NAMES, CostLedger

_SCHEMA = None


def report_schema() -> dict:
    global _SCHEMA
    if _SCHEMA is None:
        text = resources.files("tensixfft.schemas").joinpath("report.schema.json").read_text()
        _SCHEMA = json.loads(text)
    return _SCHEMA


def build_run_report(core, *, variant: str, n: int, flags=None,
                     checked: bool, max_rel_err: float, seed=None, extra=None) -> dict:
    report = {
        "variant": variant,
        "n": int(n),
        "counters": {name: int(core.ledger.counters[name]) for name in COUNTER_NAMES},
        "weights": {name: float(core.ledger.weights[name]) for name in COUNTER_NAMES},
        "modeled_cost": float(core.ledger.modeled_cost),
        "correctness": {"checked": bool(checked), "max_rel_err": float(max_rel_err)},
        "trace_len": int(core.trace_len),
    }
    if flags is not None:
        report["flags"] = flags.to_string()
    if seed is not None:
        report["seed"] = int(seed)
    if extra:
        report.update(extra)
    if any(core.ledger.thcon_issue_split.values()):
        report["thcon_issue_split"] = dict(core.ledger.thcon_issue_split)
    return report


def build_grid_report(grid, *, variant: str, rows: int, cols: int, flags=None,
                      checked: bool, max_rel_err: float, seed=None) -> dict:
    counters = grid.aggregate_counters()
    weights = CostLedger(grid.weights).weights
    cost = CostLedger.cost_of(counters, weights)
    report = {
        "variant": variant,
        "n": rows * cols,
        "counters": {name: int(counters[name]) for name in COUNTER_NAMES},
        "weights": {name: float(weights[name]) for name in COUNTER_NAMES},
        "modeled_cost": cost,
        "correctness": {"checked": bool(checked), "max_rel_err": float(max_rel_err)},
        "trace_len": int(sum(core.trace_len for core in grid.cores)),
        "rows": int(rows),
        "cols": int(cols),
        "num_cores": grid.num_cores,
        "rows_per_core": rows // grid.num_cores,
        "noc_cost_share": (counters["noc_words"] * weights["noc_words"] / cost) if cost else 0.0,
    }
    if flags is not None:
        report["flags"] = flags.to_string()
    if seed is not None:
        report["seed"] = int(seed)
    return report


def build_document(command: str, config: dict, reports: list[dict]) -> dict:
    return {"command": command, "config": config, "reports": reports}


def validate_document(document: dict) -> None:
    import jsonschema

    jsonschema.validate(document, report_schema())


def to_json_bytes(document: dict) -> bytes:
    validate_document(document)
    return (json.dumps(document, indent=2) + "\n").encode("ascii")


def _flatten(prefix: str, value, row: dict) -> None:
    if isinstance(value, dict):
        for key, sub in value.items():
            _flatten(f"{prefix}.{key}" if prefix else key, sub, row)
    else:
        row[prefix] = value


def to_csv_bytes(document: dict) -> bytes:
    """One CSV row per report; columns are JSON leaves with dotted names."""
    validate_document(document)
    rows = []
    for report in document["reports"]:
        row = {}
        _flatten("", report, row)
        rows.append(row)
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue().encode("ascii")


def write_document(document: dict, path, fmt: str = "json"):
    data = to_json_bytes(document) if fmt == "json" else to_csv_bytes(document)
    with open(path, "wb") as fh:
        fh.write(data)
    return data
