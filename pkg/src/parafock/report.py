"""Pass/fail records shared by the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Record:
    id: str
    passed: bool
    detail: str = ""
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"id": self.id, "status": self.status, "detail": self.detail}
        if self.data:
            out["data"] = self.data
        return out


@dataclass
class Report:
    name: str
    records: list[Record] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict)

    def add(self, id: str, passed: bool, detail: str = "", **data) -> Record:
        rec = Record(id, bool(passed), detail, data)
        self.records.append(rec)
        return rec

    def extend(self, other: "Report", prefix: str = "") -> None:
        for r in other.records:
            self.records.append(Record(prefix + r.id, r.passed, r.detail, r.data))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list[Record]:
        return [r for r in self.records if not r.passed]

    def __getitem__(self, id: str) -> Record:
        for r in self.records:
            if r.id == id:
                return r
        raise KeyError(id)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "suite": self.name,
            "passed": self.passed,
            "records": [r.to_dict() for r in sorted(self.records, key=lambda r: r.id)],
        }
        if self.extra:
            out["extra"] = self.extra
        return out
