"""Named residual entries and deterministic report assembly.

A ResidualEntry is one scalar check: a nonnegative value, the tolerance
it was held to, and free-form context (grid used, worst spacetime point,
per-case breakdown).  A ResidualReport collects entries plus any
findings, where a finding is a structured record of a measured
discrepancy that is being surfaced rather than asserted away.

Serialization is deterministic: entries are sorted by name, keys are
sorted, floats go through repr.  Two runs with the same configuration
produce byte-identical JSON.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

__version__ = "0.1.0"

__all__ = [
    "ResidualEntry",
    "ResidualReport",
    "rel_residual",
    "max_abs",
    "__version__",
]


def _jsonable(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, np.complexfloating):
        return _jsonable(complex(obj))
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


@dataclass
class ResidualEntry:
    """One named check; passes iff the value is finite and <= tolerance."""

    name: str
    value: float
    tolerance: float
    context: dict = field(default_factory=dict)

    def __post_init__(self):
        self.value = float(self.value)
        if self.value < 0:
            raise ValueError(f"residual value must be nonnegative, got {self.value}")

    @property
    def passed(self) -> bool:
        return math.isfinite(self.value) and self.value <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "context": _jsonable(self.context),
        }


@dataclass
class ResidualReport:
    entries: list[ResidualEntry] = field(default_factory=list)
    findings: list[dict] = field(default_factory=list)
    config_echo: dict = field(default_factory=dict)
    version: str = __version__

    def add(self, name: str, value: float, tolerance: float, **context) -> ResidualEntry:
        entry = ResidualEntry(name, value, tolerance, context)
        self.entries.append(entry)
        return entry

    def add_finding(self, check: str, **data) -> dict:
        finding = {"check": check, **data}
        self.findings.append(finding)
        return finding

    def extend(self, other: "ResidualReport", prefix: str = "") -> None:
        for e in other.entries:
            self.entries.append(
                ResidualEntry(prefix + e.name, e.value, e.tolerance, e.context)
            )
        self.findings.extend(other.findings)

    @property
    def overall_pass(self) -> bool:
        return all(e.passed for e in self.entries)

    def failed(self) -> list[ResidualEntry]:
        return [e for e in self.entries if not e.passed]

    def to_dict(self) -> dict:
        return {
            "entries": [e.to_dict() for e in sorted(self.entries, key=lambda e: e.name)],
            "findings": _jsonable(self.findings),
            "config_echo": _jsonable(self.config_echo),
            "overall_pass": self.overall_pass,
            "version": self.version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def rel_residual(diff, ref_a, ref_b, floor: float = 1e-30) -> float:
    """||diff|| relative to the larger of two reference norms.

    Inputs are norms (scalars or arrays); the result is the worst case
    over the batch.  The floor keeps exact zeros from dividing by zero.
    """
    diff = np.asarray(diff, dtype=float)
    scale = np.maximum(np.maximum(ref_a, ref_b), floor)
    return float(np.max(diff / scale))


def max_abs(a) -> float:
    """Largest absolute entry; a scalar even for batched input."""
    return float(np.max(np.abs(a)))
