"""Release bundle assembly with provenance hashes and a completeness check."""
from __future__ import annotations

import hashlib
import json
import shutil
from dataclasses import dataclass
from pathlib import Path

from .. import SCHEMA_VERSIONS
from ..aggregate.mos import NormalizationParams
from ..corruption.schedule import ParamSchedule

ANNOTATIONS_PER_PAIR = 5 * 15  # five dimensions, fifteen subjects each


def expected_annotations(n_pairs: int) -> int:
    return n_pairs * ANNOTATIONS_PER_PAIR


@dataclass(frozen=True)
class CompletenessReport:
    missing: tuple[str, ...]
    n_pairs: int
    n_annotations: int

    @property
    def complete(self) -> bool:
        return not self.missing and self.n_annotations == expected_annotations(self.n_pairs)


_BUNDLE_NAMES = {
    "manifest": "manifest.jsonl",
    "responses": "responses.jsonl",
    "scores": "scores.tsv",
    "mos": "mos.tsv",
    "split": "split.tsv",
}


def _count_pairs(manifest_path: Path) -> int:
    with open(manifest_path) as f:
        f.readline()  # schema header
        return sum(1 for line in f if line.strip())


def _count_annotations(scores_path: Path) -> int:
    with open(scores_path) as f:
        f.readline()
        return sum(1 for line in f if line.strip())


def export_dataset(
    out_dir: str | Path,
    manifest: str | Path | None = None,
    responses: str | Path | None = None,
    scores: str | Path | None = None,
    mos: str | Path | None = None,
    split: str | Path | None = None,
    schedule: ParamSchedule | None = None,
    normalization: NormalizationParams | None = None,
) -> CompletenessReport:
    """Copy the components into a bundle directory; deterministic bytes.

    Absent components are reported, not invented."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    parts = {"manifest": manifest, "responses": responses, "scores": scores,
             "mos": mos, "split": split}
    missing = [name for name, p in sorted(parts.items()) if p is None]
    if schedule is None:
        missing.append("schedule")
    if normalization is None:
        missing.append("normalization")

    hashes = {}
    for name, src in sorted(parts.items()):
        if src is None:
            continue
        dst = out / _BUNDLE_NAMES[name]
        shutil.copyfile(src, dst)
        hashes[name] = hashlib.sha256(dst.read_bytes()).hexdigest()

    n_pairs = _count_pairs(Path(manifest)) if manifest is not None else 0
    n_annotations = _count_annotations(Path(scores)) if scores is not None else 0

    provenance = {
        "schemas": dict(sorted(SCHEMA_VERSIONS.items())),
        "files": hashes,
        "schedule_hash": schedule.content_hash if schedule is not None else None,
        "normalization_hash": normalization.content_hash if normalization is not None else None,
        "n_pairs": n_pairs,
        "n_annotations": n_annotations,
        "expected_annotations": expected_annotations(n_pairs),
        "missing": sorted(missing),
    }
    with open(out / "provenance.json", "w") as f:
        json.dump(provenance, f, indent=2, sort_keys=True)
        f.write("\n")
    if normalization is not None:
        normalization.save(out / "normalization.json")

    return CompletenessReport(tuple(sorted(missing)), n_pairs, n_annotations)
