"""Similarity scores for YoN, MCQ, VQA, SEG, DET, and RET."""
from __future__ import annotations

import numpy as np

from ..imgcore.buffer import InvalidInputError
from .types import (
    BoundingBox,
    DetectionSet,
    LogitPair,
    LogitQuad,
    Orientation,
    RetrievalRanking,
    SegMask,
    Task,
    TaskScore,
)


def softmax(v: np.ndarray) -> np.ndarray:
    """Translation-invariant softmax; entries positive, sum 1."""
    e = np.exp(v - np.max(v))
    return e / e.sum()


def score_yon(ref: LogitPair, dis: LogitPair) -> TaskScore:
    """Absolute difference of the Yes-probabilities (0 = identical)."""
    p_ref = softmax(np.array([ref.yes, ref.no]))[0]
    p_dis = softmax(np.array([dis.yes, dis.no]))[0]
    return TaskScore(Task.YON, abs(p_dis - p_ref), Orientation.DEGRADATION)


def score_mcq(ref: LogitQuad, dis: LogitQuad) -> TaskScore:
    """Cosine similarity of the softmaxed option probabilities."""
    p_ref = softmax(ref.as_array())
    p_dis = softmax(dis.as_array())
    value = float(
        np.dot(p_ref, p_dis) / (np.linalg.norm(p_ref) * np.linalg.norm(p_dis))
    )
    return TaskScore(Task.MCQ, min(value, 1.0), Orientation.SIMILARITY)


def score_vqa(ref: str, dis: str, embedder) -> TaskScore:
    """Cosine similarity of embedded short answers."""
    e_ref = embedder.embed(ref)
    e_dis = embedder.embed(dis)
    value = float(np.dot(e_ref, e_dis))
    return TaskScore(Task.VQA, min(max(value, -1.0), 1.0), Orientation.SIMILARITY)


def mask_iou(ref: SegMask, dis: SegMask) -> float:
    if ref.bits.shape != dis.bits.shape:
        raise InvalidInputError(
            f"mask shape mismatch {ref.bits.shape} vs {dis.bits.shape}"
        )
    union = np.logical_or(ref.bits, dis.bits).sum()
    if union == 0:
        return 1.0  # both empty: identical segmentations by convention
    inter = np.logical_and(ref.bits, dis.bits).sum()
    return float(inter / union)


def score_seg(ref: SegMask, dis: SegMask) -> TaskScore:
    return TaskScore(Task.SEG, mask_iou(ref, dis), Orientation.SIMILARITY)


def box_iou(a: BoundingBox, b: BoundingBox) -> float:
    ix = max(0.0, min(a.x1, b.x1) - max(a.x0, b.x0))
    iy = max(0.0, min(a.y1, b.y1) - max(a.y0, b.y0))
    inter = ix * iy
    union = a.area + b.area - inter
    return inter / union if union > 0 else 0.0


def score_det(ref: DetectionSet, dis: DetectionSet) -> TaskScore:
    """Top-1 category gate times top-1 box IoU."""
    if ref.top1 is None:
        raise InvalidInputError("reference detection set is empty (no-ref-detection)")
    if dis.top1 is None:
        return TaskScore(Task.DET, 0.0, Orientation.SIMILARITY, flags=("no-detection",))
    if ref.top1.category != dis.top1.category:
        return TaskScore(Task.DET, 0.0, Orientation.SIMILARITY)
    return TaskScore(
        Task.DET, box_iou(ref.top1.box, dis.top1.box), Orientation.SIMILARITY
    )


def score_ret(ref: RetrievalRanking, dis: RetrievalRanking) -> TaskScore:
    """Sum of top-1/5/10 hits of the reference's top-1 label."""
    anchor = ref.labels[0]
    value = sum(1.0 for k in (1, 5, 10) if anchor in dis.labels[:k])
    return TaskScore(Task.RET, value, Orientation.SIMILARITY)
