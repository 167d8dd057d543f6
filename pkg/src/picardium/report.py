"""Certificates and reports shared by the checkers and the command line."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .scalars import CycScalar

__all__ = ["Certificate", "Report", "jsonable", "dumps"]

PASS = "pass"
FAIL = "fail"
NOT_IMPLIED = "not-implied"


def jsonable(x: Any):
    """Convert witnesses into plain JSON data with a deterministic layout."""
    if isinstance(x, CycScalar):
        return repr(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(jsonable(v) for v in x)
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return repr(x)


@dataclass
class Certificate:
    claim: str
    anchor: str
    status: str
    witness: Any = None
    cached: bool = False

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        d = {"claim": self.claim, "paper_anchor": self.anchor, "status": self.status, "witness": jsonable(self.witness)}
        if self.cached:
            d["cached"] = True
        return d


@dataclass
class Report:
    title: str = ""
    certificates: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, claim: str, anchor: str, ok: bool, witness: Any = None) -> Certificate:
        c = Certificate(claim, anchor, PASS if ok else FAIL, witness)
        self.certificates.append(c)
        return c

    def note(self, claim: str, anchor: str, witness: Any = None) -> Certificate:
        c = Certificate(claim, anchor, NOT_IMPLIED, witness)
        self.certificates.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.certificates:
            self.certificates.append(Certificate(prefix + c.claim, c.anchor, c.status, c.witness, c.cached))
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.certificates)

    def failures(self) -> list:
        return [c for c in self.certificates if not c.passed]

    def get(self, claim: str) -> Certificate:
        for c in self.certificates:
            if c.claim == claim:
                return c
        raise KeyError(claim)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "data": jsonable(self.data),
            "certificates": [c.to_dict() for c in self.certificates],
        }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=True) + "\n"
