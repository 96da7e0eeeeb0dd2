"""Pair each distorted-side response with its reference-side twin and score."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..aggregate.mos import ScoreRecord, SubjectScoreTable
from ..corruption.dataset import PairEntry
from ..tasks.captions import CorpusStats, SpiceAdapter, score_cap
from ..tasks.embed import HashingEmbedder, TextEmbedder
from ..tasks.scoring import (
    score_det,
    score_mcq,
    score_ret,
    score_seg,
    score_vqa,
    score_yon,
)
from ..tasks.types import Orientation, Task, TaskScore
from .records import MaskRef, ResponseRecord, TextAnswer, load_mask


@dataclass(frozen=True)
class ScoreError:
    pair_id: str
    subject_id: str
    task: Task
    reason: str


def score_responses(
    pairs: list[PairEntry],
    records: list[ResponseRecord],
    embedder: TextEmbedder | None = None,
    spice: SpiceAdapter | None = None,
    mask_base: str | Path | None = None,
) -> tuple[SubjectScoreTable, list[ScoreError]]:
    """Reference-side records use the reference id, distorted-side records
    the pair id. Caption corpus statistics come from the reference-side
    captions of the batch being scored."""
    if embedder is None:
        embedder = HashingEmbedder()
    index: dict[tuple[str, str, Task], ResponseRecord] = {
        (r.image_id, r.subject_id, r.task): r for r in records
    }
    ref_ids = {p.ref_id for p in pairs}
    ref_captions = sorted(
        r.payload.text
        for r in records
        if r.task is Task.CAP and r.image_id in ref_ids and isinstance(r.payload, TextAnswer)
    )
    stats = CorpusStats.from_captions(ref_captions) if ref_captions else None

    table = SubjectScoreTable()
    errors: list[ScoreError] = []
    by_pair: dict[str, list[ResponseRecord]] = {}
    pair_ref = {p.pair_id: p.ref_id for p in pairs}
    for r in records:
        if r.image_id in pair_ref:
            by_pair.setdefault(r.image_id, []).append(r)

    for pair_id in sorted(by_pair):
        ref_id = pair_ref[pair_id]
        for dis in sorted(by_pair[pair_id], key=lambda r: (r.subject_id, r.task.value)):
            ref = index.get((ref_id, dis.subject_id, dis.task))
            if ref is None:
                errors.append(ScoreError(pair_id, dis.subject_id, dis.task, "missing reference response"))
                continue
            try:
                score = _score_one(ref, dis, embedder, stats, spice, mask_base)
            except Exception as e:  # scorer invariants surface per record
                errors.append(ScoreError(pair_id, dis.subject_id, dis.task, str(e)))
                continue
            table.add_score(pair_id, dis.subject_id, score)
    return table, errors


def _score_one(ref, dis, embedder, stats, spice, mask_base) -> TaskScore:
    task = ref.task
    if task is Task.YON:
        return score_yon(ref.payload, dis.payload)
    if task is Task.MCQ:
        return score_mcq(ref.payload, dis.payload)
    if task is Task.VQA:
        return score_vqa(ref.payload.text, dis.payload.text, embedder)
    if task is Task.CAP:
        return score_cap(ref.payload.text, dis.payload.text, stats, spice)
    if task is Task.SEG:
        assert isinstance(ref.payload, MaskRef)
        return score_seg(load_mask(ref.payload, mask_base), load_mask(dis.payload, mask_base))
    if task is Task.DET:
        return score_det(ref.payload, dis.payload)
    return score_ret(ref.payload, dis.payload)


def write_score_table(table: SubjectScoreTable, path: str | Path) -> None:
    rows = sorted(table.records, key=lambda r: (r.pair_id, r.subject_id, r.task.value))
    with open(path, "w") as f:
        f.write("pair_id\tsubject_id\ttask\tvalue\torientation\n")
        for r in rows:
            f.write(f"{r.pair_id}\t{r.subject_id}\t{r.task.value}\t{r.value:.17g}\t{r.orientation.value}\n")


def read_score_table(path: str | Path) -> SubjectScoreTable:
    table = SubjectScoreTable()
    with open(path) as f:
        header = f.readline().strip().split("\t")
        if header[:3] != ["pair_id", "subject_id", "task"]:
            raise ValueError(f"{path}: not a score table")
        for line in f:
            pid, sid, task, value, orientation = line.rstrip("\n").split("\t")
            table.add(ScoreRecord(pid, sid, Task(task), float(value), Orientation(orientation)))
    return table
