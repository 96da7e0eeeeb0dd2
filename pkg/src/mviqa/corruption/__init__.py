from .codecs import CodecUnavailableError, get_codec, register_codec
from .dataset import (
    GenerationSummary,
    PairEntry,
    ReferenceEntry,
    derive_seed,
    draw_level,
    generate_dataset,
    load_references,
    read_manifest,
    write_manifest,
)
from .kinds import CATEGORY, STOCHASTIC_KINDS, Category, CorruptionKind, CorruptionSpec
from .schedule import ParamSchedule, ScheduleError
from .synth import apply

__all__ = [
    "CATEGORY",
    "Category",
    "CodecUnavailableError",
    "CorruptionKind",
    "CorruptionSpec",
    "GenerationSummary",
    "PairEntry",
    "ParamSchedule",
    "ReferenceEntry",
    "STOCHASTIC_KINDS",
    "ScheduleError",
    "apply",
    "derive_seed",
    "draw_level",
    "generate_dataset",
    "get_codec",
    "load_references",
    "read_manifest",
    "register_codec",
    "write_manifest",
]
