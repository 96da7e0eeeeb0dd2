"""Five-dimension pooling and the (0,5) mean opinion score."""
from __future__ import annotations

import hashlib
import json
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..tasks.types import Orientation, Task, TaskScore

DIMENSIONS = ("YoN", "MCQ", "VQA", "CAP", "Others")

_TASK_DIMENSION = {
    Task.YON: "YoN",
    Task.MCQ: "MCQ",
    Task.VQA: "VQA",
    Task.CAP: "CAP",
    Task.SEG: "Others",
    Task.DET: "Others",
    Task.RET: "Others",
}


class DegenerateDimensionError(ValueError):
    """A dimension is constant over the fitting set."""


@dataclass(frozen=True)
class ScoreRecord:
    pair_id: str
    subject_id: str
    task: Task
    value: float
    orientation: Orientation

    @property
    def dimension(self) -> str:
        return _TASK_DIMENSION[self.task]


@dataclass
class SubjectScoreTable:
    """pair -> dimension -> list of per-subject oriented contributions."""

    records: list[ScoreRecord] = field(default_factory=list)

    def add(self, record: ScoreRecord) -> None:
        self.records.append(record)

    def add_score(self, pair_id: str, subject_id: str, score: TaskScore) -> None:
        self.add(ScoreRecord(pair_id, subject_id, score.task, score.value, score.orientation))

    def by_pair_dimension(self) -> dict[str, dict[str, list[ScoreRecord]]]:
        out: dict[str, dict[str, list[ScoreRecord]]] = defaultdict(lambda: defaultdict(list))
        seen = set()
        for r in self.records:
            key = (r.pair_id, r.subject_id, r.task)
            if key in seen:
                raise ValueError(f"duplicate (pair, subject, task): {key}")
            seen.add(key)
            out[r.pair_id][r.dimension].append(r)
        return out


def orient(score_value: float, task: Task, orientation: Orientation) -> float:
    """Map every score onto the similarity orientation (YoN flips)."""
    if orientation is Orientation.DEGRADATION:
        return 1.0 - score_value
    return score_value


def oriented_value(r: ScoreRecord) -> float:
    return orient(r.value, r.task, r.orientation)


@dataclass(frozen=True)
class NormalizationParams:
    """Per-task oriented-score bounds from the fitting set.

    Bounds are keyed by task, not dimension: the pooled dimension mixes
    tasks whose raw scales differ, and each must hit [0, 1] on its own."""

    bounds: dict[str, tuple[float, float]]
    percentile_clip: bool = False

    @property
    def content_hash(self) -> str:
        canon = json.dumps(
            {"bounds": {k: list(v) for k, v in sorted(self.bounds.items())},
             "percentile_clip": self.percentile_clip},
            sort_keys=True,
        )
        return hashlib.sha256(canon.encode()).hexdigest()[:16]

    def save(self, path: str | Path) -> None:
        with open(path, "w") as f:
            json.dump(
                {"bounds": {k: list(v) for k, v in sorted(self.bounds.items())},
                 "percentile_clip": self.percentile_clip},
                f, indent=2,
            )
            f.write("\n")

    @classmethod
    def load(cls, path: str | Path) -> "NormalizationParams":
        with open(path) as f:
            d = json.load(f)
        return cls(
            bounds={k: (v[0], v[1]) for k, v in d["bounds"].items()},
            percentile_clip=bool(d.get("percentile_clip", False)),
        )


def fit_normalization(table: SubjectScoreTable, percentile_clip: bool = False) -> NormalizationParams:
    """Dataset-level min-max per task (1st/99th percentiles when the
    clip flag is on)."""
    values: dict[str, list[float]] = defaultdict(list)
    for r in table.records:
        values[r.task.value].append(oriented_value(r))
    bounds = {}
    for task, vals in values.items():
        arr = np.asarray(vals)
        if percentile_clip:
            lo, hi = float(np.percentile(arr, 1)), float(np.percentile(arr, 99))
        else:
            lo, hi = float(arr.min()), float(arr.max())
        if hi <= lo:
            raise DegenerateDimensionError(f"task {task} is constant at {lo}")
        bounds[task] = (lo, hi)
    return NormalizationParams(bounds=bounds, percentile_clip=percentile_clip)


@dataclass(frozen=True)
class MosRecord:
    pair_id: str
    dims: dict[str, float]
    mos: float
    provenance: str
    flags: tuple[str, ...] = ()


def _weights_hash(weights: dict[str, float] | None) -> str:
    canon = json.dumps(sorted((weights or {}).items()))
    return hashlib.sha256(canon.encode()).hexdigest()[:8]


def compute_mos(
    table: SubjectScoreTable,
    params: NormalizationParams,
    weights: dict[str, float] | None = None,
    expected_subjects: int = 15,
    allow_partial: bool = False,
) -> list[MosRecord]:
    """Per-pair dimension means of clipped-normalized oriented scores.

    Pairs missing subjects are excluded unless allow_partial, in which
    case the available-count mean is used and the record is flagged."""
    w = {dim: 1.0 for dim in DIMENSIONS}
    if weights:
        w.update(weights)
    provenance = f"{params.content_hash}:{_weights_hash(weights)}"
    records = []
    grouped = table.by_pair_dimension()
    for pair_id in sorted(grouped):
        dims_records = grouped[pair_id]
        dims: dict[str, float] = {}
        flags: list[str] = []
        complete = True
        for dim in DIMENSIONS:
            rs = dims_records.get(dim, [])
            if len(rs) != expected_subjects:
                complete = False
                flags.append(f"incomplete:{dim}={len(rs)}/{expected_subjects}")
                if not rs:
                    continue
            normed = []
            for r in rs:
                lo, hi = params.bounds[r.task.value]
                normed.append(min(max((oriented_value(r) - lo) / (hi - lo), 0.0), 1.0))
            dims[dim] = float(np.mean(normed))
        if not complete and not allow_partial:
            records.append(MosRecord(pair_id, {}, float("nan"), provenance, tuple(flags) + ("excluded",)))
            continue
        mos = sum(w[d] * v for d, v in dims.items())
        records.append(MosRecord(pair_id, dims, mos, provenance, tuple(flags)))
    return records


def write_mos_table(records: list[MosRecord], path: str | Path) -> None:
    cols = ["dim_yon", "dim_mcq", "dim_vqa", "dim_cap", "dim_others"]
    keys = dict(zip(cols, DIMENSIONS))
    with open(path, "w") as f:
        f.write("pair_id\t" + "\t".join(cols) + "\tmos\tflags\n")
        for r in records:
            vals = "\t".join(f"{r.dims.get(keys[c], float('nan')):.9f}" for c in cols)
            f.write(f"{r.pair_id}\t{vals}\t{r.mos:.9f}\t{','.join(r.flags)}\n")


def read_mos_table(path: str | Path) -> dict[str, float]:
    out = {}
    with open(path) as f:
        header = f.readline().strip().split("\t")
        mos_col = header.index("mos")
        flag_col = header.index("flags")
        for line in f:
            parts = line.rstrip("\n").split("\t")
            if "excluded" in parts[flag_col]:
                continue
            out[parts[0]] = float(parts[mos_col])
    return out
