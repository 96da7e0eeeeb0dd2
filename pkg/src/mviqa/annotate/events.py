"""Annotation workflow as an event-sourced state machine.

State is never stored; it is always the fold of the append-only event
log, so replaying the log on a fresh process reproduces it exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

from .qa import QABundle


class EventKind(str, Enum):
    ANSWER = "Answer"
    UNLOCK = "Unlock"
    EDIT_CHOICE = "EditChoice"
    REDESIGN_QUESTION = "RedesignQuestion"
    REVIEW_VERDICT = "ReviewVerdict"
    EXCLUDE_UNNATURAL = "ExcludeUnnatural"
    EXCLUDE_NSFW = "ExcludeNSFW"


class ItemStatus(str, Enum):
    PENDING = "Pending"
    ANSWERED = "Answered"
    UNDER_EDIT = "UnderEdit"
    AWAITING_REVIEW = "AwaitingReview"
    ACCEPTED = "Accepted"
    EXCLUDED = "Excluded"


@dataclass(frozen=True)
class AnnotationEvent:
    event_id: int
    expert_id: str
    image_id: str
    kind: EventKind
    payload: dict
    timestamp: float

    def to_json(self) -> dict:
        return {
            "event_id": self.event_id,
            "expert_id": self.expert_id,
            "image_id": self.image_id,
            "kind": self.kind.value,
            "payload": self.payload,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_json(cls, d: dict) -> "AnnotationEvent":
        return cls(
            event_id=int(d["event_id"]),
            expert_id=str(d["expert_id"]),
            image_id=str(d["image_id"]),
            kind=EventKind(d["kind"]),
            payload=dict(d["payload"]),
            timestamp=float(d["timestamp"]),
        )


@dataclass(frozen=True)
class ItemState:
    image_id: str
    status: ItemStatus = ItemStatus.PENDING
    answered_by: str | None = None
    author: str | None = None  # expert who edited or redesigned
    changed_fields: tuple[str, ...] = ()
    exclusion: str | None = None

    def to_json(self) -> dict:
        return {
            "image_id": self.image_id,
            "status": self.status.value,
            "answered_by": self.answered_by,
            "author": self.author,
            "changed_fields": list(self.changed_fields),
            "exclusion": self.exclusion,
        }


class IllegalTransitionError(ValueError):
    def __init__(self, state: ItemState, event: AnnotationEvent, why: str):
        self.state = state
        self.event = event
        super().__init__(
            f"{event.kind.value} on {state.image_id} in {state.status.value}: {why}"
        )


# bundle fields an edit event may rewrite
EDITABLE_FIELDS = frozenset(
    {"yon_question", "yon_answer", "mcq_question", "mcq_options", "mcq_correct",
     "vqa_question", "vqa_answer", "caption"}
)


def apply_event(state: ItemState, event: AnnotationEvent) -> ItemState:
    """Pure transition; raises on anything the workflow forbids."""
    if state.status is ItemStatus.EXCLUDED:
        raise IllegalTransitionError(state, event, "item is excluded")

    kind = event.kind
    if kind in (EventKind.EXCLUDE_UNNATURAL, EventKind.EXCLUDE_NSFW):
        return replace(state, status=ItemStatus.EXCLUDED, exclusion=kind.value)

    if kind is EventKind.ANSWER:
        if state.status is not ItemStatus.PENDING:
            raise IllegalTransitionError(state, event, "answers only from Pending")
        return replace(state, status=ItemStatus.ANSWERED, answered_by=event.expert_id)

    if kind is EventKind.UNLOCK:
        if state.status not in (ItemStatus.PENDING, ItemStatus.ANSWERED):
            raise IllegalTransitionError(state, event, "nothing to unlock")
        return replace(state, status=ItemStatus.UNDER_EDIT)

    if kind in (EventKind.EDIT_CHOICE, EventKind.REDESIGN_QUESTION):
        if state.status is not ItemStatus.UNDER_EDIT:
            raise IllegalTransitionError(state, event, "edits require a prior Unlock")
        changed = tuple(sorted(event.payload.get("fields", {})))
        bad = set(changed) - EDITABLE_FIELDS
        if bad:
            raise IllegalTransitionError(state, event, f"unknown fields: {sorted(bad)}")
        return replace(
            state,
            status=ItemStatus.AWAITING_REVIEW,
            author=event.expert_id,
            changed_fields=changed,
        )

    if kind is EventKind.REVIEW_VERDICT:
        if state.status is not ItemStatus.AWAITING_REVIEW:
            raise IllegalTransitionError(state, event, "nothing awaiting review")
        if event.expert_id == state.author:
            raise IllegalTransitionError(state, event, "author may not review own edit")
        if bool(event.payload.get("accepted")):
            return replace(state, status=ItemStatus.ACCEPTED)
        # rejected redesigns go back to the floor
        return replace(state, status=ItemStatus.PENDING, author=None, changed_fields=())

    raise IllegalTransitionError(state, event, "unknown event kind")


def fold(image_id: str, events: list[AnnotationEvent]) -> ItemState:
    state = ItemState(image_id)
    for e in events:
        if e.image_id == image_id:
            state = apply_event(state, e)
    return state


def apply_edit(bundle: QABundle, fields: dict) -> QABundle:
    """Rebuild the bundle with the event's field overrides."""
    kwargs = {f: getattr(bundle, f) for f in bundle.__dataclass_fields__}
    for name, value in fields.items():
        if name not in EDITABLE_FIELDS:
            raise ValueError(f"field not editable: {name}")
        if name == "mcq_options":
            value = tuple(value)
        kwargs[name] = value
    return QABundle(**kwargs)
