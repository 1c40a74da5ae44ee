"""JSON and CSV output.

JSON schema (top level)::

    {"suite": str, "config": {...}, "cases": [record, ...], "pass": bool}

Each record holds ``case`` (label), ``inputs`` (enough to re-run the case,
including its derived ``seed``), ``pass`` and, on failure, ``failure`` or
``error``.  Rank cases add ``verdict``, ``min_deficiency`` and ``reports``.
Output carries no timestamps, so equal configs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

RANK_FIELDS = ["case", "degree", "components", "total_length", "ambient", "rank", "expected",
               "deficiency", "maximal", "prime", "seed", "trials"]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_json(obj, path) -> None:
    Path(path).write_text(dumps(obj))


def rank_rows(report_dict: dict) -> list[dict]:
    rows = []
    for case in report_dict.get("cases", []):
        for r in case.get("reports", []):
            row = {"case": case["case"], **r}
            row["components"] = ",".join(r["components"])
            rows.append(row)
    return rows


def to_csv(report_dict: dict) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=RANK_FIELDS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    w.writerows(rank_rows(report_dict))
    return buf.getvalue()


def write_csv(report_dict: dict, path) -> None:
    Path(path).write_text(to_csv(report_dict))
