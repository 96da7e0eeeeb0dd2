"""Distorted-set generation: 30 corruptions per reference, seeded manifest."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..imgcore.buffer import load_image, save_image
from .kinds import CorruptionKind, CorruptionSpec
from .schedule import ParamSchedule
from .synth import apply

MANIFEST_SCHEMA = "mviqa.manifest/1"
CONTENT_TYPES = ("NSI", "SCI", "AIGI")


@dataclass(frozen=True)
class ReferenceEntry:
    ref_id: str
    content_type: str
    path: str


@dataclass(frozen=True)
class PairEntry:
    ref_id: str
    content_type: str
    kind: CorruptionKind
    level: int
    seed: int
    path: str
    schedule_hash: str
    flags: tuple[str, ...] = ()

    @property
    def pair_id(self) -> str:
        return f"{self.ref_id}__{self.kind.value}"

    def to_json(self) -> str:
        return json.dumps(
            {
                "ref_id": self.ref_id,
                "content_type": self.content_type,
                "kind": self.kind.value,
                "level": self.level,
                "seed": self.seed,
                "path": self.path,
                "schedule_hash": self.schedule_hash,
                "flags": list(self.flags),
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, line: str) -> "PairEntry":
        d = json.loads(line)
        return cls(
            ref_id=d["ref_id"],
            content_type=d["content_type"],
            kind=CorruptionKind(d["kind"]),
            level=int(d["level"]),
            seed=int(d["seed"]),
            path=d["path"],
            schedule_hash=d["schedule_hash"],
            flags=tuple(d.get("flags", [])),
        )


@dataclass
class GenerationSummary:
    pairs: list[PairEntry] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.skipped


def derive_seed(master_seed: int, ref_id: str, kind: CorruptionKind) -> int:
    """Stable 64-bit per-pair seed; regeneration is reproducible."""
    h = hashlib.blake2b(
        f"{master_seed}:{ref_id}:{kind.value}".encode(), digest_size=8
    )
    return int.from_bytes(h.digest(), "big")


def draw_level(master_seed: int, ref_id: str, kind: CorruptionKind) -> int:
    """Seeded random intensity in 1..5 for one (reference, kind) pair."""
    h = hashlib.blake2b(
        f"level:{master_seed}:{ref_id}:{kind.value}".encode(), digest_size=8
    )
    return int.from_bytes(h.digest(), "big") % 5 + 1


def load_references(path: str | Path) -> list[ReferenceEntry]:
    refs = []
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            d = json.loads(line)
            refs.append(ReferenceEntry(d["ref_id"], d["content_type"], d["path"]))
    return refs


def write_manifest(pairs: list[PairEntry], path: str | Path, rng_name: str = "pcg64") -> None:
    with open(path, "w") as f:
        f.write(json.dumps({"schema": MANIFEST_SCHEMA, "rng": rng_name}, sort_keys=True) + "\n")
        for p in pairs:
            f.write(p.to_json() + "\n")


def read_manifest(path: str | Path) -> list[PairEntry]:
    pairs = []
    with open(path) as f:
        header = json.loads(f.readline())
        if header.get("schema") != MANIFEST_SCHEMA:
            raise ValueError(f"unexpected manifest schema: {header.get('schema')}")
        for line in f:
            if line.strip():
                pairs.append(PairEntry.from_json(line))
    return pairs


def _generate_one(ref: ReferenceEntry, sched: ParamSchedule, master_seed: int,
                  out_dir: Path, sched_hash: str):
    try:
        img = load_image(ref.path)
    except Exception as exc:
        return None, (ref.ref_id, str(exc))
    pairs = []
    for kind in CorruptionKind:
        level = draw_level(master_seed, ref.ref_id, kind)
        seed = derive_seed(master_seed, ref.ref_id, kind)
        spec = CorruptionSpec(kind=kind, level=level, seed=seed)
        distorted = apply(img, spec, sched)
        rel = f"distorted/{ref.ref_id}__{kind.value}.png"
        save_image(distorted, out_dir / rel)
        flags = ("denoiser=stand-in",) if kind == CorruptionKind.CNN_DENOISE else ()
        pairs.append(
            PairEntry(
                ref_id=ref.ref_id,
                content_type=ref.content_type,
                kind=kind,
                level=level,
                seed=seed,
                path=rel,
                schedule_hash=sched_hash,
                flags=flags,
            )
        )
    return pairs, None


def generate_dataset(
    refs: list[ReferenceEntry],
    sched: ParamSchedule,
    master_seed: int,
    out_dir: str | Path,
    jobs: int = 1,
) -> GenerationSummary:
    """Write 30 distorted images per readable reference plus a manifest.

    Per-pair seeds and levels derive from (master_seed, ref_id, kind), so
    two runs with the same master seed produce byte-identical outputs.
    With jobs > 1 references are processed by a worker pool; results are
    collected back in reference order, so output does not depend on the
    worker count.
    """
    out_dir = Path(out_dir)
    img_dir = out_dir / "distorted"
    img_dir.mkdir(parents=True, exist_ok=True)
    summary = GenerationSummary()
    sched_hash = sched.content_hash
    ordered = sorted(refs, key=lambda r: r.ref_id)
    if jobs <= 1:
        results = [_generate_one(r, sched, master_seed, out_dir, sched_hash) for r in ordered]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(lambda r: _generate_one(r, sched, master_seed, out_dir, sched_hash), ordered)
            )
    for pairs, skipped in results:
        if skipped is not None:
            summary.skipped.append(skipped)
        else:
            summary.pairs.extend(pairs)
    write_manifest(summary.pairs, out_dir / "manifest.jsonl", sched.rng_name)
    return summary
