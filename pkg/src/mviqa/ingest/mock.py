"""Deterministic stand-in subjects with a controllable error dial.

Responses are continuous functions of an error rate p = base_error +
sensitivity * severity, evaluated on uniform draws that are shared between
the reference and distorted responses of one (subject, reference, task)
triple. Severity only moves p, never the draws, so at sensitivity 0 the
two responses are identical and every oriented score sits at its identity
extreme.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..annotate.qa import QABundle
from ..corruption.dataset import PairEntry
from ..corruption.kinds import CorruptionSpec
from ..corruption.schedule import ParamSchedule
from ..tasks.text import tokenize
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
from .records import ResponseRecord, TextAnswer, write_mask
from .roster import Subject, SubjectRoster

MASK_SIZE = 64
P_CEIL = 0.95


@dataclass(frozen=True)
class MockProfile:
    base_error: dict[Task, float]
    sensitivity: float
    seed: int

    def __post_init__(self):
        for task, p in self.base_error.items():
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"base_error[{task.value}] outside [0,1]: {p}")
        if self.sensitivity < 0:
            raise ValueError(f"sensitivity must be nonnegative: {self.sensitivity}")

    @classmethod
    def uniform(cls, base_error: float, sensitivity: float, seed: int) -> "MockProfile":
        return cls({t: base_error for t in Task}, sensitivity, seed)


def _rng(*parts) -> np.random.Generator:
    token = ":".join(str(p) for p in parts)
    digest = hashlib.blake2b(token.encode(), digest_size=8).digest()
    return np.random.Generator(np.random.PCG64(int.from_bytes(digest, "big")))


def _p(profile: MockProfile, task: Task, severity: float) -> float:
    return min(profile.base_error[task] + profile.sensitivity * severity, P_CEIL)


def _yon(p: float, rng: np.random.Generator, answer: bool) -> LogitPair:
    u = rng.uniform()
    # confidence drifts toward the wrong side as p grows
    p_err = min(max(p + 0.1 * (u - 0.5), 0.01), 0.99)
    p_yes = (1.0 - p_err) if answer else p_err
    return LogitPair(math.log(p_yes), math.log(1.0 - p_yes))


def _mcq(p: float, rng: np.random.Generator, correct: int) -> LogitQuad:
    u = rng.uniform()
    p_err = min(max(p + 0.1 * (u - 0.5), 0.01), 0.99)
    probs = np.full(4, p_err / 3.0)
    probs[correct] = 1.0 - p_err
    return LogitQuad(*(math.log(v) for v in probs))


def _dropout(p: float, rng: np.random.Generator, text: str) -> TextAnswer:
    tokens = tokenize(text)
    us = rng.uniform(size=len(tokens))
    kept = [t for t, u in zip(tokens, us) if u >= p]
    if not kept:
        kept = tokens[:1]
    return TextAnswer(" ".join(kept))


def _base_geometry(ref_id: str):
    """Per-reference ground-truth object, shared by all subjects."""
    g = _rng("geom", ref_id)
    x0 = float(g.uniform(5, 25))
    y0 = float(g.uniform(5, 25))
    w = float(g.uniform(12, 28))
    h = float(g.uniform(12, 28))
    category = int(g.integers(0, 10))
    ranking = tuple(int(v) for v in g.permutation(10))
    return BoundingBox(x0, y0, x0 + w, y0 + h), category, ranking


def _seg(p: float, rng: np.random.Generator, box: BoundingBox) -> SegMask:
    yy, xx = np.mgrid[0:MASK_SIZE, 0:MASK_SIZE]
    base = (xx >= box.x0) & (xx < box.x1) & (yy >= box.y0) & (yy < box.y1)
    flips = rng.uniform(size=base.shape) < 0.5 * p
    return SegMask(base ^ flips)


def _det(p: float, rng: np.random.Generator, box: BoundingBox, category: int) -> DetectionSet:
    u1, u2, u3 = rng.uniform(size=3)
    dx = (u1 - 0.5) * 2.0 * p * 20.0
    dy = (u2 - 0.5) * 2.0 * p * 20.0
    shifted = BoundingBox(box.x0 + dx, box.y0 + dy, box.x1 + dx, box.y1 + dy)
    cat = category if u3 >= p else (category + 1) % 10
    return DetectionSet((Detection(cat, 1.0 - p, shifted),))


def _ret(p: float, rng: np.random.Generator, ranking: tuple[int, ...]) -> RetrievalRanking:
    u = rng.uniform()
    # push the true top item down the list as p grows
    d = int(round((len(ranking) - 1) * min(p, 1.0) * u))
    labels = list(ranking)
    labels.insert(d, labels.pop(0))
    return RetrievalRanking(tuple(labels))


def _respond(
    profile: MockProfile,
    subject: Subject,
    task: Task,
    ref_id: str,
    image_id: str,
    p: float,
    qa: QABundle,
    mask_dir: Path | None,
) -> ResponseRecord:
    # one stream per (subject, reference, task): ref and dis replay it
    rng = _rng(profile.seed, subject.subject_id, ref_id, task.value)
    box, category, ranking = _base_geometry(ref_id)
    if task is Task.YON:
        payload = _yon(p, rng, qa.yon_answer)
    elif task is Task.MCQ:
        payload = _mcq(p, rng, qa.mcq_correct)
    elif task is Task.VQA:
        payload = _dropout(p, rng, qa.vqa_answer)
    elif task is Task.CAP:
        payload = _dropout(p, rng, qa.caption)
    elif task is Task.SEG:
        if mask_dir is None:
            raise ValueError("mask_dir is required for SEG subjects")
        mask = _seg(p, rng, box)
        payload = write_mask(mask, mask_dir / f"{image_id}__{subject.subject_id}.png")
    elif task is Task.DET:
        payload = _det(p, rng, box, category)
    else:
        payload = _ret(p, rng, ranking)
    return ResponseRecord(image_id, subject.subject_id, task, payload)


def mock_subject(
    profile: MockProfile,
    subject: Subject,
    pairs: list[PairEntry],
    qa: dict[str, QABundle],
    schedule: ParamSchedule,
    mask_dir: str | Path | None = None,
) -> list[ResponseRecord]:
    """One reference-side record per (reference, task) plus one
    distorted-side record per (pair, task)."""
    mask_path = Path(mask_dir) if mask_dir is not None else None
    if mask_path is not None:
        mask_path.mkdir(parents=True, exist_ok=True)
    out: list[ResponseRecord] = []
    done_refs: set[tuple[str, Task]] = set()
    for pair in sorted(pairs, key=lambda e: e.pair_id):
        bundle = qa[pair.ref_id]
        severity = schedule.severity_of(CorruptionSpec(pair.kind, pair.level, pair.seed))
        # per-(reference, kind) susceptibility so equal-severity kinds
        # do not collapse onto identical responses
        factor = 0.75 + 0.5 * float(_rng("susceptibility", pair.ref_id, pair.kind.value).uniform())
        severity *= factor
        for task in sorted(subject.tasks, key=lambda t: t.value):
            if (pair.ref_id, task) not in done_refs:
                done_refs.add((pair.ref_id, task))
                out.append(
                    _respond(profile, subject, task, pair.ref_id, pair.ref_id,
                             _p(profile, task, 0.0), bundle, mask_path)
                )
            out.append(
                _respond(profile, subject, task, pair.ref_id, pair.pair_id,
                         _p(profile, task, severity), bundle, mask_path)
            )
    return out


def make_profiles(
    roster: SubjectRoster,
    sensitivity: float,
    seed: int,
    base_error: float = 0.05,
    spread: float = 0.03,
) -> dict[str, MockProfile]:
    """Per-subject profiles with a small deterministic base-error spread."""
    profiles = {}
    for sid in sorted(roster.subjects):
        jitter = float(_rng("profile", seed, sid).uniform(-spread, spread))
        b = min(max(base_error + jitter, 0.0), 1.0)
        profiles[sid] = MockProfile.uniform(b, sensitivity, seed)
    return profiles


def generate_mock_responses(
    roster: SubjectRoster,
    pairs: list[PairEntry],
    qa: dict[str, QABundle],
    schedule: ParamSchedule,
    sensitivity: float,
    seed: int,
    mask_dir: str | Path | None = None,
    base_error: float = 0.05,
) -> list[ResponseRecord]:
    profiles = make_profiles(roster, sensitivity, seed, base_error)
    out: list[ResponseRecord] = []
    for sid in sorted(roster.subjects):
        out.extend(
            mock_subject(profiles[sid], roster[sid], pairs, qa, schedule, mask_dir)
        )
    return out
