"""Response record schema and the validating streaming loader."""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Union

import numpy as np
from PIL import Image

from .. import SCHEMA_VERSIONS
from ..tasks.types import (
    BoundingBox,
    Detection,
    DetectionSet,
    LogitPair,
    LogitQuad,
    RetrievalRanking,
    SegMask,
    Task,
)
from .roster import LMM_TASKS, SubjectRoster


class IngestError(ValueError):
    pass


@dataclass(frozen=True)
class TextAnswer:
    text: str


@dataclass(frozen=True)
class MaskRef:
    """Masks live in separate 1-bit files; records carry path + hash."""

    path: str
    sha256: str


Payload = Union[LogitPair, LogitQuad, TextAnswer, MaskRef, DetectionSet, RetrievalRanking]

_PAYLOAD_TYPE = {
    Task.YON: LogitPair,
    Task.MCQ: LogitQuad,
    Task.VQA: TextAnswer,
    Task.CAP: TextAnswer,
    Task.SEG: MaskRef,
    Task.DET: DetectionSet,
    Task.RET: RetrievalRanking,
}


@dataclass(frozen=True)
class ResponseRecord:
    image_id: str  # a reference id or a pair id
    subject_id: str
    task: Task
    payload: Payload
    temperature: float = 0.0

    def __post_init__(self):
        if not isinstance(self.payload, _PAYLOAD_TYPE[self.task]):
            raise IngestError(
                f"payload {type(self.payload).__name__} does not match task {self.task.value}"
            )
        if self.task in LMM_TASKS and self.temperature != 0.0:
            # text-task decoding is greedy by construction
            raise IngestError(f"nonzero temperature for {self.task.value}")

    def to_json(self) -> dict:
        p = self.payload
        if isinstance(p, LogitPair):
            payload = {"yes": p.yes, "no": p.no}
        elif isinstance(p, LogitQuad):
            payload = {"logits": [p.a, p.b, p.c, p.d]}
        elif isinstance(p, TextAnswer):
            payload = {"text": p.text}
        elif isinstance(p, MaskRef):
            payload = {"mask_path": p.path, "sha256": p.sha256}
        elif isinstance(p, DetectionSet):
            payload = {
                "detections": [
                    {"category": d.category, "confidence": d.confidence,
                     "box": [d.box.x0, d.box.y0, d.box.x1, d.box.y1]}
                    for d in p.detections
                ]
            }
        else:
            payload = {"labels": list(p.labels)}
        return {
            "image_id": self.image_id,
            "subject_id": self.subject_id,
            "task": self.task.value,
            "temperature": self.temperature,
            "payload": payload,
        }

    @classmethod
    def from_json(cls, d: dict) -> "ResponseRecord":
        task = Task(d["task"])
        p = d["payload"]
        if task is Task.YON:
            payload: Payload = LogitPair(float(p["yes"]), float(p["no"]))
        elif task is Task.MCQ:
            logits = p["logits"]
            if len(logits) != 4:
                raise IngestError(f"arity: expected 4 logits, got {len(logits)}")
            payload = LogitQuad(*(float(v) for v in logits))
        elif task in (Task.VQA, Task.CAP):
            payload = TextAnswer(str(p["text"]))
        elif task is Task.SEG:
            payload = MaskRef(str(p["mask_path"]), str(p["sha256"]))
        elif task is Task.DET:
            dets = [
                Detection(
                    category=int(e["category"]),
                    confidence=float(e["confidence"]),
                    box=BoundingBox(*(float(v) for v in e["box"])),
                )
                for e in p["detections"]
            ]
            payload = DetectionSet(tuple(dets))
        else:
            payload = RetrievalRanking(tuple(int(v) for v in p["labels"]))
        return cls(
            image_id=str(d["image_id"]),
            subject_id=str(d["subject_id"]),
            task=task,
            payload=payload,
            temperature=float(d.get("temperature", 0.0)),
        )


@dataclass(frozen=True)
class LineReject:
    line: int
    reason: str


def write_responses(records: Iterable[ResponseRecord], path: str | Path) -> None:
    with open(path, "w") as f:
        f.write(json.dumps({"schema": SCHEMA_VERSIONS["responses"]}) + "\n")
        for r in records:
            f.write(json.dumps(r.to_json(), sort_keys=True) + "\n")


def load_responses(
    path: str | Path,
    roster: SubjectRoster | None = None,
    max_reject_fraction: float = 0.01,
) -> tuple[list[ResponseRecord], list[LineReject]]:
    """Validate every line; collect rejects, fail hard past the budget."""
    records: list[ResponseRecord] = []
    rejects: list[LineReject] = []
    seen: set[tuple[str, str, Task]] = set()
    with open(path) as f:
        header_line = f.readline()
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError:
            raise IngestError(f"{path}: missing schema header")
        if header.get("schema") != SCHEMA_VERSIONS["responses"]:
            raise IngestError(f"{path}: unexpected schema {header.get('schema')!r}")
        for lineno, line in enumerate(f, start=2):
            line = line.strip()
            if not line:
                continue
            try:
                d = json.loads(line)
            except json.JSONDecodeError as e:
                rejects.append(LineReject(lineno, f"parse: {e.msg}"))
                continue
            try:
                rec = ResponseRecord.from_json(d)
            except IngestError as e:
                rejects.append(LineReject(lineno, str(e)))
                continue
            except (KeyError, TypeError, ValueError) as e:
                rejects.append(LineReject(lineno, f"schema: {e}"))
                continue
            if roster is not None:
                if rec.subject_id not in roster:
                    rejects.append(LineReject(lineno, f"unknown subject: {rec.subject_id}"))
                    continue
                if rec.task not in roster[rec.subject_id].tasks:
                    rejects.append(
                        LineReject(lineno, f"subject {rec.subject_id} does not cover {rec.task.value}")
                    )
                    continue
            key = (rec.image_id, rec.subject_id, rec.task)
            if key in seen:
                rejects.append(LineReject(lineno, f"duplicate: {key}"))
                continue
            seen.add(key)
            records.append(rec)
    total = len(records) + len(rejects)
    if total and len(rejects) / total > max_reject_fraction:
        raise IngestError(
            f"{path}: {len(rejects)}/{total} lines rejected, over the "
            f"{max_reject_fraction:.0%} budget; first: line {rejects[0].line}: {rejects[0].reason}"
        )
    return records, rejects


def write_mask(mask: SegMask, path: str | Path) -> MaskRef:
    """Store as a 1-bit image; the ref carries the file's content hash."""
    path = Path(path)
    img = Image.fromarray(mask.bits.astype(np.uint8) * 255).convert("1")
    img.save(path, format="PNG")
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    return MaskRef(str(path), digest)


def load_mask(ref: MaskRef, base_dir: str | Path | None = None) -> SegMask:
    path = Path(ref.path)
    if base_dir is not None and not path.is_absolute():
        path = Path(base_dir) / path
    raw = path.read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != ref.sha256:
        raise IngestError(f"mask content hash mismatch for {path}")
    arr = np.asarray(Image.open(path).convert("1"))
    return SegMask(arr.astype(bool))
