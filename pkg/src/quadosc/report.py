"""Verification report data model and its canonical JSON serialization.

Reports are deterministic by default: records are ordered by identity id and
wall times are zeroed, so a rerun produces byte-identical output.  Measured
per-identity times can be embedded on request (which naturally breaks byte
reproducibility).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .operators import IdentityRecord

__all__ = ["VerificationReport", "merge_reports", "SCHEMA"]

_VERSION = "0.1.0"

SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "quadosc verification report",
    "type": "object",
    "required": ["suite", "environment", "records", "summary"],
    "additionalProperties": False,
    "properties": {
        "suite": {"type": "string"},
        "environment": {
            "type": "object",
            "required": ["version", "parameter_mode"],
            "additionalProperties": False,
            "properties": {
                "version": {"type": "string"},
                "parameter_mode": {"type": "string", "enum": ["symbolic"]},
            },
        },
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["suite", "id", "status", "residual", "anchor", "ms"],
                "additionalProperties": False,
                "properties": {
                    "suite": {"type": "string"},
                    "id": {"type": "string"},
                    "status": {"type": "string", "enum": ["verified", "failed"]},
                    "residual": {"type": "string"},
                    "anchor": {"type": "string"},
                    "ms": {"type": "number"},
                    "note": {"type": "string"},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["total", "verified", "failed"],
            "additionalProperties": False,
            "properties": {
                "total": {"type": "integer"},
                "verified": {"type": "integer"},
                "failed": {"type": "integer"},
            },
        },
    },
}


@dataclass
class VerificationReport:
    """Aggregated result of one or more identity suites."""

    suite: str
    records: list = field(default_factory=list)   # (suite_name, IdentityRecord)

    def add(self, suite_name: str, recs):
        for r in recs:
            self.records.append((suite_name, r))

    @property
    def failed(self):
        return [(s, r) for s, r in self.records if not r.ok]

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_json_dict(self, timing: bool = False) -> dict:
        ordered = sorted(self.records, key=lambda t: (t[0], t[1].id))
        records = []
        for suite_name, r in ordered:
            entry = {
                "suite": suite_name,
                "id": r.id,
                "status": r.status,
                "residual": r.residual,
                "anchor": r.anchor,
                "ms": round(r.ms, 3) if timing else 0,
            }
            if r.note:
                entry["note"] = r.note
            records.append(entry)
        verified = sum(1 for _, r in self.records if r.ok)
        return {
            "suite": self.suite,
            "environment": {"version": _VERSION, "parameter_mode": "symbolic"},
            "records": records,
            "summary": {
                "total": len(self.records),
                "verified": verified,
                "failed": len(self.records) - verified,
            },
        }

    def write_json(self, path: str, timing: bool = False):
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(timing=timing), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def summary_lines(self):
        by_suite = {}
        for s, r in self.records:
            tot, bad = by_suite.get(s, (0, 0))
            by_suite[s] = (tot + 1, bad + (0 if r.ok else 1))
        lines = []
        for s in sorted(by_suite):
            tot, bad = by_suite[s]
            status = "ok" if bad == 0 else f"{bad} FAILED"
            lines.append(f"{s:12s} {tot:4d} identities  {status}")
        return lines


def merge_reports(dicts) -> dict:
    """Merge previously written report documents into a single one."""
    merged = VerificationReport("merged")
    for doc in dicts:
        for entry in doc.get("records", []):
            rec = IdentityRecord(
                id=entry["id"], anchor=entry.get("anchor", ""),
                status=entry["status"], residual=entry.get("residual", ""),
                ms=entry.get("ms", 0), note=entry.get("note", ""))
            merged.records.append((entry.get("suite", "unknown"), rec))
    return merged.to_json_dict(timing=True)
