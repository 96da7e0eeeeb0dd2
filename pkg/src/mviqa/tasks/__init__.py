from .captions import CorpusStats, SpiceAdapter, bleu, cider, modified_precision, score_cap
from .embed import EmbedderError, HashingEmbedder, HttpEmbedder, TextEmbedder
from .scoring import (
    box_iou,
    mask_iou,
    score_det,
    score_mcq,
    score_ret,
    score_seg,
    score_vqa,
    score_yon,
    softmax,
)
from .text import normalize_text, tokenize
from .types import (
    BoundingBox,
    Detection,
    DetectionSet,
    LogitPair,
    LogitQuad,
    Orientation,
    RetrievalRanking,
    SegMask,
    Task,
    TaskScore,
)

__all__ = [
    "BoundingBox",
    "CorpusStats",
    "Detection",
    "DetectionSet",
    "EmbedderError",
    "HashingEmbedder",
    "HttpEmbedder",
    "LogitPair",
    "LogitQuad",
    "Orientation",
    "RetrievalRanking",
    "SegMask",
    "SpiceAdapter",
    "Task",
    "TaskScore",
    "TextEmbedder",
    "bleu",
    "box_iou",
    "cider",
    "mask_iou",
    "modified_precision",
    "normalize_text",
    "score_cap",
    "score_det",
    "score_mcq",
    "score_ret",
    "score_seg",
    "score_vqa",
    "score_yon",
    "softmax",
    "tokenize",
]
