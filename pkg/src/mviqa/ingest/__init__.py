from .export import (
    ANNOTATIONS_PER_PAIR,
    CompletenessReport,
    expected_annotations,
    export_dataset,
)
from .mock import MockProfile, generate_mock_responses, make_profiles, mock_subject
from .records import (
    IngestError,
    LineReject,
    MaskRef,
    ResponseRecord,
    TextAnswer,
    load_mask,
    load_responses,
    write_mask,
    write_responses,
)
from .roster import (
    LMM_TASKS,
    RosterError,
    Subject,
    SubjectKind,
    SubjectRoster,
    default_mock_roster,
)
from .score import ScoreError, read_score_table, score_responses, write_score_table

__all__ = [
    "ANNOTATIONS_PER_PAIR",
    "CompletenessReport",
    "IngestError",
    "LMM_TASKS",
    "LineReject",
    "MaskRef",
    "MockProfile",
    "ResponseRecord",
    "RosterError",
    "ScoreError",
    "Subject",
    "SubjectKind",
    "SubjectRoster",
    "TextAnswer",
    "default_mock_roster",
    "expected_annotations",
    "export_dataset",
    "generate_mock_responses",
    "load_mask",
    "load_responses",
    "make_profiles",
    "mock_subject",
    "read_score_table",
    "score_responses",
    "write_mask",
    "write_responses",
    "write_score_table",
]
