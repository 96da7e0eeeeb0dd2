"""Payload types for the seven downstream tasks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class Task(str, Enum):
    YON = "YoN"
    MCQ = "MCQ"
    VQA = "VQA"
    CAP = "CAP"
    SEG = "SEG"
    DET = "DET"
    RET = "RET"


class Orientation(str, Enum):
    SIMILARITY = "similarity"
    DEGRADATION = "degradation"


@dataclass(frozen=True)
class TaskScore:
    task: Task
    value: float
    orientation: Orientation
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"non-finite task score: {self.value}")


@dataclass(frozen=True)
class LogitPair:
    """Next-token scores for 'Yes' and 'No'."""

    yes: float
    no: float

    def __post_init__(self):
        if not (math.isfinite(self.yes) and math.isfinite(self.no)):
            raise ValueError("logits must be finite")


@dataclass(frozen=True)
class LogitQuad:
    """Logits for the four MCQ options."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            if not math.isfinite(v):
                raise ValueError("logits must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=np.float64)


@dataclass(frozen=True)
class SegMask:
    """Binary segmentation mask; dims must match the scored pair."""

    bits: np.ndarray

    def __post_init__(self):
        if self.bits.ndim != 2 or self.bits.dtype != bool:
            raise ValueError("mask must be a 2-D bool array")

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]


@dataclass(frozen=True)
class BoundingBox:
    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if self.x1 <= self.x0 or self.y1 <= self.y0:
            raise ValueError("box must have positive area")

    @property
    def area(self) -> float:
        return (self.x1 - self.x0) * (self.y1 - self.y0)


@dataclass(frozen=True)
class Detection:
    category: int
    confidence: float
    box: BoundingBox


@dataclass(frozen=True)
class DetectionSet:
    detections: tuple[Detection, ...] = ()

    def __post_init__(self):
        confs = [d.confidence for d in self.detections]
        if any(b > a for a, b in zip(confs, confs[1:])):
            raise ValueError("detections must be ordered by non-increasing confidence")

    @property
    def top1(self) -> Detection | None:
        return self.detections[0] if self.detections else None


@dataclass(frozen=True)
class RetrievalRanking:
    """Category-label ids in descending relevance; at least 10, no dupes."""

    labels: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) < 10:
            raise ValueError("ranking must list at least 10 labels")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("ranking must not contain duplicate labels")
