from .events import (
    EDITABLE_FIELDS,
    AnnotationEvent,
    EventKind,
    IllegalTransitionError,
    ItemState,
    ItemStatus,
    apply_edit,
    apply_event,
    fold,
)
from .qa import (
    QABundle,
    RuleVerdict,
    ValidationReport,
    load_bundles,
    save_bundles,
    validate_bundle,
)
from .service import AnnotationService, UnknownExpertError, create_app
from .store import EventLog, RecoveryReport

__all__ = [
    "AnnotationEvent",
    "AnnotationService",
    "EDITABLE_FIELDS",
    "EventKind",
    "EventLog",
    "IllegalTransitionError",
    "ItemState",
    "ItemStatus",
    "QABundle",
    "RecoveryReport",
    "RuleVerdict",
    "UnknownExpertError",
    "ValidationReport",
    "apply_edit",
    "apply_event",
    "create_app",
    "fold",
    "load_bundles",
    "save_bundles",
    "validate_bundle",
]
