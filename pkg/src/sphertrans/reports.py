"""Record and report types for the verification harness, plus JSON I/O.

A SuiteReport is deterministic given (suite, trials, seed, tol): records
are merged in trial order and all floats serialize via repr, so two runs
differ only in wall_time.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

PASS = "pass"
REFINED = "refined-pass"
FAIL = "fail"


@dataclass(frozen=True)
class InequalityRecord:
    """One evaluated inequality instance; slack = rhs - lhs."""

    inequality_id: str
    lhs: float
    rhs: float
    slack: float
    status: str
    fingerprint: dict


@dataclass
class SuiteReport:
    suite: str
    seed: int
    trials: int
    tol: float
    opt_tol: float
    records: list
    summary: dict
    wall_time: float = 0.0

    def ok(self) -> bool:
        return all(entry["ok"] for entry in self.summary.values())


def summarize(records, required_rates: dict) -> dict:
    """Per-inequality aggregation: counts, pass rate, minimum slack.

    An inequality is ok when its pass rate (refined passes count) reaches
    its required rate (1.0 unless the claim is statistical).
    """
    out: dict = {}
    for rec in records:
        entry = out.setdefault(
            rec.inequality_id,
            {
                "trials": 0,
                "passes": 0,
                "refined": 0,
                "fails": 0,
                "min_slack": None,
                "min_slack_fingerprint": None,
            },
        )
        entry["trials"] += 1
        if rec.status == FAIL:
            entry["fails"] += 1
        else:
            entry["passes"] += 1
            if rec.status == REFINED:
                entry["refined"] += 1
        if entry["min_slack"] is None or rec.slack < entry["min_slack"]:
            entry["min_slack"] = rec.slack
            entry["min_slack_fingerprint"] = rec.fingerprint
    for rid, entry in out.items():
        required = required_rates.get(rid, 1.0)
        rate = entry["passes"] / entry["trials"] if entry["trials"] else 0.0
        entry["pass_rate"] = rate
        entry["required_pass_rate"] = required
        entry["ok"] = rate >= required
    return dict(sorted(out.items()))


def tightness_stats(report: SuiteReport, bins: int = 20) -> dict:
    """Histogram of slack per inequality id, as plain data."""
    import numpy as np

    grouped: dict = {}
    for rec in report.records:
        grouped.setdefault(rec.inequality_id, []).append(rec.slack)
    out = {}
    for rid, slacks in sorted(grouped.items()):
        arr = np.asarray(slacks, dtype=float)
        counts, edges = np.histogram(arr, bins=bins)
        out[rid] = {
            "count": int(arr.size),
            "min": float(arr.min()),
            "max": float(arr.max()),
            "mean": float(arr.mean()),
            "bin_edges": [float(e) for e in edges],
            "bin_counts": [int(c) for c in counts],
        }
    return out


def report_to_dict(report: SuiteReport) -> dict:
    return {
        "suite": report.suite,
        "seed": report.seed,
        "trials": report.trials,
        "tol": report.tol,
        "opt_tol": report.opt_tol,
        "records": [asdict(r) for r in report.records],
        "summary": report.summary,
        "wall_time": report.wall_time,
    }


def report_to_json(report: SuiteReport) -> str:
    return json.dumps(report_to_dict(report), indent=1, sort_keys=True)


def write_report(report: SuiteReport, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(report_to_json(report))
        fh.write("\n")
