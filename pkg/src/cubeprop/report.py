"""Check records shared by the classifier reports and the verification CLI."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class Record:
    theorem: str
    instance: str
    status: str
    witness: Any = None
    replay: Any = field(default=None, repr=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("replay")
        return d

    def line(self) -> str:
        return f"{self.status:<12} {self.theorem:<14} {self.instance}"


def sort_records(records):
    return sorted(records, key=lambda r: (r.theorem, r.instance))


def to_json(records, **extra) -> str:
    records = sort_records(records)
    counts = {s: sum(r.status == s for r in records)
              for s in (PASS, FAIL, INCONCLUSIVE)}
    doc = {"schema": 1, **extra, "summary": counts,
           "records": [r.to_dict() for r in records]}
    return json.dumps(doc, indent=2, default=str) + "\n"
