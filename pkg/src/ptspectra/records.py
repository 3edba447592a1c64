"""Plain data records passed between engines, plus their serialization."""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PreconditionError

DEDUP_RADIUS = 1e-6

METHODS = ("exact-secular", "shooting", "wkb-estimate")


@dataclass(frozen=True)
class PotentialParams:
    """Exponents of V(x) = (ix)^a |x|^b."""

    a: float
    b: float

    def validate(self) -> "PotentialParams":
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise PreconditionError("a and b must be finite")
        if not self.a < 2:
            raise PreconditionError(f"a < 2 required (no decaying real-axis solution), got a={self.a}")
        if not self.a > -2:
            raise PreconditionError(f"a > -2 required (no decaying real-axis solution), got a={self.a}")
        if not self.a + self.b > 0:
            raise PreconditionError(f"a + b > 0 required (confining potential), got a+b={self.a + self.b}")
        return self


@dataclass(frozen=True)
class EigenvalueRecord:
    value: complex
    index: int
    method: str
    residual: float
    tolerance: float
    params: PotentialParams | None = None
    settings_hash: str = ""

    def to_dict(self) -> dict:
        d = {
            "re": self.value.real,
            "im": self.value.imag,
            "index": self.index,
            "method": self.method,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "a": None if self.params is None else self.params.a,
            "b": None if self.params is None else self.params.b,
            "settings_hash": self.settings_hash,
        }
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EigenvalueRecord":
        params = None if d.get("a") is None else PotentialParams(float(d["a"]), float(d["b"]))
        return cls(
            value=complex(float(d["re"]), float(d["im"])),
            index=int(d["index"]),
            method=str(d["method"]),
            residual=float(d["residual"]),
            tolerance=float(d["tolerance"]),
            params=params,
            settings_hash=str(d.get("settings_hash", "")),
        )


def settings_hash(settings: dict) -> str:
    """Short stable digest of a solver settings mapping."""
    blob = json.dumps(settings, sort_keys=True, default=repr).encode()
    return hashlib.sha1(blob).hexdigest()[:12]


def dedup_sorted(values: Iterable[complex], radius: float = DEDUP_RADIUS) -> list[complex]:
    """Sort by (Re, Im) and drop values within `radius` of one already kept."""
    kept: list[complex] = []
    for z in sorted(values, key=lambda z: (z.real, z.imag)):
        if all(abs(z - k) > radius for k in kept):
            kept.append(z)
    return kept


def make_records(
    roots: Sequence[tuple[complex, float]],
    method: str,
    tolerance: float,
    params: PotentialParams | None = None,
    settings: dict | None = None,
) -> list[EigenvalueRecord]:
    """Build indexed records from (value, residual) pairs already sorted and deduplicated."""
    digest = settings_hash(settings or {})
    return [
        EigenvalueRecord(complex(z), i, method, float(res), float(tolerance), params, digest)
        for i, (z, res) in enumerate(roots)
    ]


def fmt_float(x: float | None) -> str:
    """Shortest decimal that round-trips to the same double."""
    if x is None:
        return ""
    return repr(float(x))


def records_to_json(records: Sequence[EigenvalueRecord], **extra) -> str:
    payload = dict(extra)
    payload["records"] = [r.to_dict() for r in records]
    return json.dumps(payload, indent=2)


def records_from_json(text: str) -> list[EigenvalueRecord]:
    return [EigenvalueRecord.from_dict(d) for d in json.loads(text)["records"]]


RECORD_CSV_FIELDS = ["index", "re", "im", "residual", "tolerance", "method", "a", "b", "settings_hash"]


def records_to_csv(records: Sequence[EigenvalueRecord]) -> str:
    lines = [",".join(RECORD_CSV_FIELDS)]
    for r in records:
        d = r.to_dict()
        row = []
        for k in RECORD_CSV_FIELDS:
            v = d[k]
            row.append(fmt_float(v) if isinstance(v, float) else ("" if v is None else str(v)))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
