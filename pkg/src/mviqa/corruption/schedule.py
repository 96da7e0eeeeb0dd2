"""Per-(kind, level) corruption parameters, loaded from a config file."""
from __future__ import annotations

import hashlib
import json
from importlib import resources
from pathlib import Path
from typing import Any

import yaml

from .kinds import CorruptionKind, CorruptionSpec


class ScheduleError(ValueError):
    """Missing or inconsistent schedule entries."""


class ParamSchedule:
    def __init__(self, raw: dict[str, Any]):
        self.raw = raw
        self.rng_name = raw.get("rng", "pcg64")
        self.block_size = int(raw.get("block_size", 32))
        kinds = raw.get("kinds", {})
        missing = [k.value for k in CorruptionKind if k.value not in kinds]
        if missing:
            raise ScheduleError(f"schedule missing kinds: {missing}")
        for name, entry in kinds.items():
            sev = entry.get("severity")
            if not sev or len(sev) != 5:
                raise ScheduleError(f"{name}: severity must list 5 values")
            if any(b <= a for a, b in zip(sev, sev[1:])):
                raise ScheduleError(f"{name}: severity must be strictly increasing")
        self._kinds = kinds

    def params(self, spec: CorruptionSpec) -> dict[str, Any]:
        """Level-resolved parameters for one spec (lists indexed by level)."""
        try:
            entry = self._kinds[spec.kind.value]
        except KeyError:
            raise ScheduleError(f"no schedule entry for {spec.kind.value}") from None
        out: dict[str, Any] = {}
        for key, val in entry.items():
            if isinstance(val, list):
                if len(val) != 5:
                    raise ScheduleError(f"{spec.kind.value}.{key}: expected 5 values")
                out[key] = val[spec.level - 1]
            else:
                out[key] = val
        return out

    def severity_of(self, spec: CorruptionSpec) -> float:
        return float(self.params(spec)["severity"])

    @property
    def content_hash(self) -> str:
        canon = json.dumps(self.raw, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()[:16]

    @classmethod
    def from_file(cls, path: str | Path) -> "ParamSchedule":
        with open(path) as f:
            return cls(yaml.safe_load(f))

    @classmethod
    def default(cls) -> "ParamSchedule":
        text = resources.files("mviqa.corruption").joinpath("default_schedule.yaml").read_text()
        return cls(yaml.safe_load(text))
