"""JSON and CSV output for scenario reports and sweeps."""

from __future__ import annotations

import csv
import io
import json

EXIT = {"pass": 0, "fail": 1, "inconclusive": 3}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, default=_default)


def _default(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return str(obj)


def write_json(path: str, obj) -> None:
    with open(path, "w") as f:
        f.write(dumps(obj) + "\n")


def reports_csv(reports) -> str:
    """One row per check across all reports."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["scenario", "check", "slope", "status", "observed", "expected"])
    for r in reports:
        for c in r.checks:
            w.writerow([r.scenario, c["label"], c["slope"] or "", c["status"],
                        json.dumps(c["observed"], sort_keys=True), json.dumps(c["expected"], sort_keys=True)])
    return buf.getvalue()


def sweep_csv(result: dict) -> str:
    """One row per factor: length, word, minimum period."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["length", "factor", "period"])
    w.writerows(result.get("factors", []))
    return buf.getvalue()


def write_text(path: str, text: str) -> None:
    with open(path, "w") as f:
        f.write(text)


def overall(statuses) -> str:
    statuses = set(statuses)
    if "fail" in statuses:
        return "fail"
    if "inconclusive" in statuses:
        return "inconclusive"
    return "pass"
