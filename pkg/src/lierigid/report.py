"""Claims and reports: the product of every pipeline run.

A report is an ordered tree of plain values.  It renders either as a YAML
document (the human-readable default) or as JSON; both are deterministic
given the inputs and the seed, since timing is only included on request.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

import yaml

SCHEMA = "lierigid-report/1"

PROVENANCE = ("literature", "derived", "trivial")


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INDETERMINATE = "indeterminate"


def plain(x: Any) -> Any:
    """Convert exact and library objects into JSON/YAML-friendly values."""
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, bool) or x is None or isinstance(x, (int, str, float)):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if hasattr(x, "item"):  # numpy scalars
        return plain(x.item())
    return str(x)


@dataclass
class Claim:
    name: str
    expected: Any
    computed: Any
    provenance: str
    status: Status
    note: str = ""

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance tag {self.provenance!r}")

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def as_dict(self) -> dict:
        d = {
            "name": self.name,
            "expected": plain(self.expected),
            "computed": plain(self.computed),
            "provenance": self.provenance,
            "status": self.status.value,
        }
        if self.note:
            d["note"] = self.note
        return d


def check(name: str, expected, computed, provenance: str, note: str = "") -> Claim:
    """Claim comparing exact values; a missing computation is indeterminate."""
    if computed is None:
        status = Status.INDETERMINATE
    else:
        status = Status.PASS if plain(expected) == plain(computed) else Status.FAIL
    return Claim(name, expected, computed, provenance, status, note)


@dataclass
class Report:
    command: str
    seed: int | None = None
    samples: int | None = None
    subject: str | None = None
    params: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    claims: list[Claim] = field(default_factory=list)
    narrative: dict = field(default_factory=dict)
    timing: dict | None = None

    def add(self, claim: Claim) -> Claim:
        self.claims.append(claim)
        return claim

    def failed(self, provenance: str | None = None) -> list[Claim]:
        return [c for c in self.claims
                if c.status is not Status.PASS and (provenance is None or c.provenance == provenance)]

    def summary(self) -> dict:
        out = {"claims": len(self.claims)}
        for st in Status:
            out[st.value] = sum(c.status is st for c in self.claims)
        out["literature_ok"] = not self.failed("literature")
        return out

    def as_dict(self) -> dict:
        d: dict[str, Any] = {"schema": SCHEMA, "command": self.command}
        if self.subject is not None:
            d["subject"] = self.subject
        if self.seed is not None:
            d["seed"] = self.seed
        if self.samples is not None:
            d["samples"] = self.samples
        if self.params:
            d["params"] = plain(self.params)
        if self.values:
            d["values"] = plain(self.values)
        if self.claims:
            d["claims"] = [c.as_dict() for c in self.claims]
        if self.narrative:
            d["narrative"] = plain(self.narrative)
        d["summary"] = self.summary()
        if self.timing is not None:
            d["timing"] = {k: round(v, 3) for k, v in self.timing.items()}
        return d


def render(doc: dict | list, as_json: bool = False) -> str:
    if as_json:
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True, default_flow_style=False, width=100)
