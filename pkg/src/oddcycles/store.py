"""Line-oriented result record files for batch runs.

One JSON object per line, fixed key order, UTF-8.  Records are
self-verifying: certificates are re-checked on load, so a record file is
trustworthy regardless of which shard or machine produced it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .resolver import NONEXISTENT_REASONS, Reason
from .search import OddCycle, verify_cycle

SCHEMA_VERSION = 1

_KEY_ORDER = (
    "schema_version",
    "t",
    "m",
    "value",
    "reason",
    "certificate",
    "algorithm",
    "elapsed_ms",
    "nodes_examined",
    "shard_id",
    "worker_count",
)


class StoreError(Exception):
    pass


class RecordValidationError(StoreError):
    def __init__(self, path: Path, line_no: int, message: str) -> None:
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


class StoreConflictError(StoreError):
    def __init__(self, conflicts: Sequence[str]) -> None:
        super().__init__("conflicting records: " + "; ".join(conflicts))
        self.conflicts = list(conflicts)


@dataclass(frozen=True)
class ResultRecord:
    t: int
    m: int
    value: Optional[int]
    reason: str
    certificate: Optional[tuple[tuple[int, ...], ...]]
    algorithm: str
    elapsed_ms: int
    nodes_examined: int
    shard_id: int
    worker_count: int
    schema_version: int = SCHEMA_VERSION

    def to_json(self) -> str:
        data = {k: getattr(self, k) for k in _KEY_ORDER}
        if data["certificate"] is not None:
            data["certificate"] = [list(v) for v in data["certificate"]]
        return json.dumps(data, separators=(",", ":"))

    def validate(self) -> None:
        if self.schema_version != SCHEMA_VERSION:
            raise ValueError(f"schema_version {self.schema_version} unsupported")
        try:
            reason = Reason(self.reason)
        except ValueError:
            raise ValueError(f"unknown reason {self.reason!r}") from None
        if reason in NONEXISTENT_REASONS:
            if self.value != 0 or self.certificate is not None:
                raise ValueError(f"reason {self.reason} requires value 0, no certificate")
            return
        if reason is Reason.UNRESOLVED:
            if self.value is not None:
                raise ValueError("unresolved record must have null value")
            return
        if self.value is None or self.value < 3 or self.value % 2 == 0:
            raise ValueError(f"value {self.value} is not an odd integer >= 3")
        if self.certificate is None:
            raise ValueError(f"reason {self.reason} requires a certificate")
        # For m >= 4 the certificate is a K4-derived 3-cycle at squared
        # magnitude r; verification is the same check.
        cycle = OddCycle.from_vectors(self.t, self.certificate)
        diag = verify_cycle(cycle)
        if not diag.valid:
            raise ValueError(f"certificate fails verification: {diag.reason}")
        if len(self.certificate) != self.value:
            raise ValueError(
                f"certificate length {len(self.certificate)} != value {self.value}"
            )

    @staticmethod
    def from_json(line: str) -> "ResultRecord":
        data = json.loads(line)
        cert = data.get("certificate")
        if cert is not None:
            cert = tuple(tuple(int(x) for x in v) for v in cert)
        return ResultRecord(
            schema_version=data["schema_version"],
            t=data["t"],
            m=data["m"],
            value=data["value"],
            reason=data["reason"],
            certificate=cert,
            algorithm=data["algorithm"],
            elapsed_ms=data["elapsed_ms"],
            nodes_examined=data["nodes_examined"],
            shard_id=data["shard_id"],
            worker_count=data["worker_count"],
        )


def append(path: Path | str, record: ResultRecord) -> None:
    """Append one record as one line; flushed before returning."""
    record.validate()
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(record.to_json() + "\n")
        fh.flush()


def load(path: Path | str) -> list[ResultRecord]:
    """Load and validate every record; any bad line rejects the whole file."""
    path = Path(path)
    records: list[ResultRecord] = []
    seen: dict[tuple[int, int], ResultRecord] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = ResultRecord.from_json(line)
                rec.validate()
            except (ValueError, KeyError, json.JSONDecodeError) as exc:
                raise RecordValidationError(path, line_no, str(exc)) from None
            key = (rec.m, rec.t)
            if key in seen and seen[key].value != rec.value:
                raise RecordValidationError(
                    path,
                    line_no,
                    f"duplicate (m={rec.m}, t={rec.t}) with conflicting values "
                    f"{seen[key].value} vs {rec.value}",
                )
            seen[key] = rec
            records.append(rec)
    return records


def merge(paths: Sequence[Path | str], out: Path | str) -> list[ResultRecord]:
    """Union record files keyed by (m, t); abort (no output) on any conflict."""
    merged: dict[tuple[int, int], ResultRecord] = {}
    conflicts: list[str] = []
    for path in paths:
        for rec in load(path):
            key = (rec.m, rec.t)
            if key in merged and merged[key].value != rec.value:
                conflicts.append(
                    f"(m={key[0]}, t={key[1]}): {merged[key].value} vs {rec.value}"
                )
            else:
                merged.setdefault(key, rec)
    if conflicts:
        raise StoreConflictError(conflicts)
    records = [merged[k] for k in sorted(merged)]
    with open(out, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")
    return records


def resolved_keys(path: Path | str) -> set[tuple[int, int]]:
    """(m, t) pairs already present in a record file; empty if absent."""
    path = Path(path)
    if not path.exists():
        return set()
    return {(rec.m, rec.t) for rec in load(path)}
