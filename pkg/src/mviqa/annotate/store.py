"""Durable append-only event log with corrupt-tail recovery."""
from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from .. import SCHEMA_VERSIONS
from .events import AnnotationEvent


@dataclass(frozen=True)
class RecoveryReport:
    valid_events: int
    truncated_bytes: int

    @property
    def truncated(self) -> bool:
        return self.truncated_bytes > 0


class EventLog:
    """One JSONL file; every append is flushed and fsynced before the
    call returns, so an acknowledged event survives a crash."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self.events: list[AnnotationEvent] = []
        self.recovery = self._open()

    def _open(self) -> RecoveryReport:
        if not self.path.exists():
            with open(self.path, "w") as f:
                f.write(json.dumps({"schema": SCHEMA_VERSIONS["events"]}) + "\n")
                f.flush()
                os.fsync(f.fileno())
            return RecoveryReport(0, 0)
        raw = self.path.read_bytes()
        lines = raw.split(b"\n")
        header = json.loads(lines[0])
        if header.get("schema") != SCHEMA_VERSIONS["events"]:
            raise ValueError(f"{self.path}: unexpected event schema {header.get('schema')!r}")
        good_bytes = len(lines[0]) + 1
        last_id = 0
        for line in lines[1:]:
            if not line:
                continue
            try:
                event = AnnotationEvent.from_json(json.loads(line))
            except (json.JSONDecodeError, KeyError, ValueError):
                break  # corrupt tail: keep everything before it
            if event.event_id != last_id + 1:
                break
            last_id = event.event_id
            self.events.append(event)
            good_bytes += len(line) + 1
        truncated = len(raw) - good_bytes
        if truncated > 0:
            with open(self.path, "r+b") as f:
                f.truncate(good_bytes)
                f.flush()
                os.fsync(f.fileno())
        return RecoveryReport(len(self.events), max(truncated, 0))

    @property
    def next_event_id(self) -> int:
        return len(self.events) + 1

    def append(self, expert_id: str, image_id: str, kind, payload: dict) -> AnnotationEvent:
        """Assigns the monotone id; durability before return."""
        with self._lock:
            event = AnnotationEvent(
                event_id=self.next_event_id,
                expert_id=expert_id,
                image_id=image_id,
                kind=kind,
                payload=payload,
                timestamp=time.time(),
            )
            with open(self.path, "a") as f:
                f.write(json.dumps(event.to_json(), sort_keys=True) + "\n")
                f.flush()
                os.fsync(f.fileno())
            self.events.append(event)
            return event
