"""Deterministic CSV / JSON / plain-table emission of flat row dicts.

Floats are rendered with a fixed precision per column (2 decimals where a
column is listed in ``decimals``, 6 significant digits otherwise), so
output never depends on locale or platform float printing.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Mapping

FORMATS = ("csv", "json", "table")


def format_value(value, decimals: int | None = None) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.{decimals}f}" if decimals is not None else f"{value:.6g}"
    return str(value)


def _formatted(rows: Iterable[Mapping], decimals: Mapping[str, int]) -> tuple[list[str], list[list[str]]]:
    rows = list(rows)
    fields = list(rows[0]) if rows else []
    body = [[format_value(r[f], decimals.get(f)) for f in fields] for r in rows]
    return fields, body


def to_csv(rows: Iterable[Mapping], decimals: Mapping[str, int] = {}, fields: list[str] | None = None) -> str:
    names, body = _formatted(rows, decimals)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names or fields or [])
    writer.writerows(body)
    return buf.getvalue()


def _json_value(text: str, original):
    if original is None:
        return None
    if isinstance(original, bool):
        return original
    if isinstance(original, int):
        return original
    if isinstance(original, float):
        return float(text)
    return text


def to_json(rows: Iterable[Mapping], decimals: Mapping[str, int] = {}) -> str:
    rows = list(rows)
    names, body = _formatted(rows, decimals)
    objs = [{f: _json_value(cell, r[f]) for f, cell in zip(names, cells)} for r, cells in zip(rows, body)]
    return json.dumps(objs, indent=2) + "\n"


def to_table(rows: Iterable[Mapping], decimals: Mapping[str, int] = {}) -> str:
    names, body = _formatted(rows, decimals)
    if not names:
        return "(no rows)\n"
    widths = [max(len(n), *(len(c[i]) for c in body)) if body else len(n) for i, n in enumerate(names)]
    lines = ["  ".join(n.rjust(w) for n, w in zip(names, widths)),
             "  ".join("-" * w for w in widths)]
    lines += ["  ".join(c.rjust(w) for c, w in zip(cells, widths)) for cells in body]
    return "\n".join(lines) + "\n"


def render(rows: Iterable[Mapping], fmt: str, decimals: Mapping[str, int] = {}) -> str:
    if fmt == "csv":
        return to_csv(rows, decimals)
    if fmt == "json":
        return to_json(rows, decimals)
    if fmt == "table":
        return to_table(rows, decimals)
    raise ValueError(f"unknown format {fmt!r}")


def read_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))
