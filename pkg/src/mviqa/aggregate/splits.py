"""Train/val partitioning and the difficulty split of the validation set."""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .. import SCHEMA_VERSIONS
from ..corruption.kinds import CorruptionKind

MILD_SEVERE_THRESHOLD = 3.333


@dataclass(frozen=True)
class SplitAssignment:
    train: tuple[str, ...]
    val: tuple[str, ...]
    seed: int

    def side_of(self, pair_id: str) -> str:
        if pair_id in set(self.train):
            return "train"
        if pair_id in set(self.val):
            return "val"
        raise KeyError(pair_id)

    def save(self, path: str | Path) -> None:
        with open(path, "w") as f:
            f.write(json.dumps({"schema": SCHEMA_VERSIONS["split"], "seed": self.seed}) + "\n")
            for pid in self.train:
                f.write(f"{pid}\ttrain\n")
            for pid in self.val:
                f.write(f"{pid}\tval\n")

    @classmethod
    def load(cls, path: str | Path) -> "SplitAssignment":
        train, val = [], []
        with open(path) as f:
            header = json.loads(f.readline())
            if header.get("schema") != SCHEMA_VERSIONS["split"]:
                raise ValueError(f"unexpected split schema: {header.get('schema')}")
            for line in f:
                pid, side = line.rstrip("\n").split("\t")
                (train if side == "train" else val).append(pid)
        return cls(tuple(train), tuple(val), int(header["seed"]))


def ref_of(pair_id: str) -> str:
    # pair ids are "{ref_id}__{kind}"
    ref, sep, _ = pair_id.rpartition("__")
    if not sep:
        raise ValueError(f"malformed pair id: {pair_id}")
    return ref


def split_train_val(pair_ids: list[str], seed: int, val_fraction: float = 0.2) -> SplitAssignment:
    """8:2 by default, grouped so every pair from one reference lands on
    the same side."""
    if not 0.0 < val_fraction < 1.0:
        raise ValueError("val_fraction must be in (0, 1)")
    by_ref: dict[str, list[str]] = defaultdict(list)
    for pid in pair_ids:
        by_ref[ref_of(pid)].append(pid)
    refs = sorted(by_ref)
    rng = np.random.Generator(np.random.PCG64(seed))
    order = rng.permutation(len(refs))
    n_val = int(round(len(refs) * val_fraction))
    val_refs = {refs[i] for i in order[:n_val]}
    train, val = [], []
    for ref in refs:
        (val if ref in val_refs else train).extend(sorted(by_ref[ref]))
    return SplitAssignment(tuple(train), tuple(val), seed)


def cell_means(
    mos: dict[str, float],
    cells: dict[str, tuple[CorruptionKind, int]],
) -> dict[tuple[CorruptionKind, int], float]:
    """Mean MOS per (kind, level) cell over the pairs present in `mos`."""
    acc: dict[tuple[CorruptionKind, int], list[float]] = defaultdict(list)
    for pid, value in mos.items():
        acc[cells[pid]].append(value)
    return {cell: float(np.mean(vs)) for cell, vs in acc.items()}


def classify_cells(
    means: dict[tuple[CorruptionKind, int], float],
    threshold: float = MILD_SEVERE_THRESHOLD,
) -> dict[tuple[CorruptionKind, int], str]:
    """Strictly above the threshold is mild; at or below is severe."""
    return {cell: ("mild" if m > threshold else "severe") for cell, m in means.items()}


def split_mild_severe(
    val_ids: list[str],
    mos: dict[str, float],
    cells: dict[str, tuple[CorruptionKind, int]],
    threshold: float = MILD_SEVERE_THRESHOLD,
) -> tuple[list[str], list[str]]:
    """Partition validation pairs by the difficulty of their cell.

    Cell means are computed over every pair with a MOS, not just the
    validation side, so the classification is stable across splits."""
    labels = classify_cells(cell_means(mos, cells), threshold)
    mild, severe = [], []
    for pid in sorted(val_ids):
        (mild if labels[cells[pid]] == "mild" else severe).append(pid)
    return mild, severe
