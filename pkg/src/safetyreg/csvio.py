"""Flat-file formats: the sweep CSV and the number formatting shared with JSON output."""

from __future__ import annotations

import csv
import io
import math
from typing import Iterable, TextIO

from .sweep import SweepRecord

SWEEP_COLUMNS = ("theta_g", "theta_d", "delta", "abstain", "alpha0", "beta0", "alpha1", "beta1",
                 "u_g", "u_d", "class", "backfire", "mutualism")
BOOL_COLUMNS = ("abstain", "backfire", "mutualism")


class SchemaError(ValueError):
    pass


def round12(x: float) -> float:
    """Round to 12 significant digits; negative zero becomes zero."""
    x = float(x)
    if not math.isfinite(x):
        return x
    v = float(f"{x:.12g}")
    return 0.0 if v == 0 else v


def fmt_num(x: float) -> str:
    return repr(round12(x))


def fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def record_row(r: SweepRecord) -> list[str]:
    reg = r.regulation
    head = [fmt_num(reg.theta_g), fmt_num(reg.theta_d), fmt_num(r.delta)]
    if r.outcome is None:
        nan = "nan"
        return head + ["false", nan, nan, nan, nan, nan, nan, "error", "false", "false"]
    o = r.outcome
    return head + [
        fmt_bool(o.abstained),
        fmt_num(o.gamma0.alpha), fmt_num(o.gamma0.beta),
        fmt_num(o.gamma1.alpha), fmt_num(o.gamma1.beta),
        fmt_num(o.u_g), fmt_num(o.u_d),
        r.classification, fmt_bool(r.backfire), fmt_bool(r.mutualism),
    ]


def write_sweep_csv(records: Iterable[SweepRecord], fh: TextIO) -> int:
    """Write the sweep CSV (``\\n`` line endings); returns the number of data rows."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    n = 0
    for r in records:
        w.writerow(record_row(r))
        n += 1
    return n


def sweep_csv_text(records: Iterable[SweepRecord]) -> str:
    buf = io.StringIO()
    write_sweep_csv(records, buf)
    return buf.getvalue()


def _parse_bool(s: str, col: str, line: int) -> bool:
    if s == "true":
        return True
    if s == "false":
        return False
    raise SchemaError(f"line {line}: column {col!r} expects true/false, got {s!r}")


def read_sweep_csv(fh: TextIO, required: Iterable[str] = SWEEP_COLUMNS) -> list[dict]:
    """Parse a sweep CSV into typed rows.  Raises ``SchemaError`` naming any missing
    column or unparseable value."""
    reader = csv.DictReader(fh)
    header = reader.fieldnames or []
    missing = [c for c in required if c not in header]
    if missing:
        raise SchemaError("missing column(s): " + ", ".join(missing))
    rows = []
    for line, raw in enumerate(reader, start=2):
        row = {}
        for col, val in raw.items():
            if col in BOOL_COLUMNS:
                row[col] = _parse_bool(val, col, line)
            elif col == "class":
                row[col] = val
            elif col in SWEEP_COLUMNS:
                try:
                    row[col] = float(val)
                except (TypeError, ValueError):
                    raise SchemaError(f"line {line}: column {col!r} expects a number, got {val!r}") from None
            else:
                row[col] = val
        rows.append(row)
    return rows
