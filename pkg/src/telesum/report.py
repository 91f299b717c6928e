"""Structured verification outcomes.

A Report is a flat list of per-check records plus the seed that produced
them.  Record order is normalized by a stable sort key so that reports are
identical regardless of worker count or scheduling; the JSON rendering is
byte-identical for a fixed (suite, seed, flags) triple.  Wall time is
tracked for the text rendering only and never enters the JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INADMISSIBLE = "inadmissible"

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class CheckRecord:
    suite: str
    identity: str
    check: str
    status: str
    n: int | None = None
    sample: int | None = None
    witness: dict[str, str] | None = None
    citation: str = ""

    def sort_key(self) -> tuple:
        return (
            self.suite,
            self.identity,
            self.check,
            -1 if self.sample is None else self.sample,
            -1 if self.n is None else self.n,
        )


@dataclass
class Report:
    suite: str
    seed: int
    records: list[CheckRecord] = field(default_factory=list)
    wall_time: float = 0.0

    def extend(self, records: list[CheckRecord]) -> None:
        self.records.extend(records)

    def sorted_records(self) -> list[CheckRecord]:
        return sorted(self.records, key=CheckRecord.sort_key)

    def totals(self) -> dict[str, int]:
        counts = {"checks": len(self.records), PASS: 0, FAIL: 0, INADMISSIBLE: 0}
        for r in self.records:
            counts[r.status] += 1
        return counts

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.records)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.sorted_records() if r.status == FAIL]

    def first_counterexample(self) -> CheckRecord | None:
        fails = self.failures()
        return fails[0] if fails else None

    def to_json_dict(self, flags: dict | None = None) -> dict:
        totals = self.totals()
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "flags": flags or {},
            "totals": totals,
            "results": [
                {
                    "suite": r.suite,
                    "identity": r.identity,
                    "check": r.check,
                    "n": r.n,
                    "sample": r.sample,
                    "status": r.status,
                    "witness": r.witness,
                    "citation": r.citation,
                }
                for r in self.sorted_records()
            ],
        }

    def to_json(self, flags: dict | None = None) -> str:
        return json.dumps(self.to_json_dict(flags), sort_keys=True, separators=(",", ":")) + "\n"


def merge_reports(suite: str, seed: int, parts: list[Report]) -> Report:
    merged = Report(suite=suite, seed=seed)
    for part in parts:
        merged.extend(part.records)
        merged.wall_time += part.wall_time
    merged.records = merged.sorted_records()
    return merged
