"""Annotation service: workflow core plus a thin HTTP face."""
from __future__ import annotations

import threading
from pathlib import Path

from .events import (
    AnnotationEvent,
    EventKind,
    IllegalTransitionError,
    ItemState,
    ItemStatus,
    apply_edit,
    apply_event,
)
from .qa import QABundle, validate_bundle
from .store import EventLog


class UnknownExpertError(KeyError):
    pass


class AnnotationService:
    """Single-writer workflow engine; reads see a consistent snapshot."""

    def __init__(self, corpus: dict[str, QABundle], state_dir: str | Path, experts: list[str]):
        if not experts:
            raise ValueError("at least one expert required")
        self.experts = set(experts)
        state_dir = Path(state_dir)
        state_dir.mkdir(parents=True, exist_ok=True)
        self.log = EventLog(state_dir / "events.jsonl")
        self._lock = threading.Lock()
        self._base = dict(corpus)
        self.states: dict[str, ItemState] = {i: ItemState(i) for i in corpus}
        self.bundles: dict[str, QABundle] = dict(corpus)
        self._committed: dict[str, QABundle] = dict(corpus)
        for event in self.log.events:
            self._fold_one(event)

    def _fold_one(self, event: AnnotationEvent) -> ItemState:
        state = apply_event(self.states[event.image_id], event)
        self.states[event.image_id] = state
        if event.kind in (EventKind.EDIT_CHOICE, EventKind.REDESIGN_QUESTION):
            self.bundles[event.image_id] = apply_edit(
                self.bundles[event.image_id], event.payload.get("fields", {})
            )
        elif event.kind is EventKind.REVIEW_VERDICT:
            # edits stay provisional until a reviewer signs off
            if event.payload.get("accepted"):
                self._committed[event.image_id] = self.bundles[event.image_id]
            else:
                self.bundles[event.image_id] = self._committed[event.image_id]
        return state

    def _require_expert(self, expert_id: str) -> None:
        if expert_id not in self.experts:
            raise UnknownExpertError(expert_id)

    def next_item(self, expert_id: str) -> tuple[QABundle, ItemState] | None:
        """A Pending item this expert did not author, else something they
        may review; None when the queue is drained."""
        self._require_expert(expert_id)
        for image_id in sorted(self.states):
            s = self.states[image_id]
            if s.status is ItemStatus.PENDING and s.author != expert_id:
                return self.bundles[image_id], s
        for image_id in sorted(self.states):
            s = self.states[image_id]
            if s.status is ItemStatus.AWAITING_REVIEW and s.author != expert_id:
                return self.bundles[image_id], s
        return None

    def submit(self, expert_id: str, image_id: str, kind: EventKind, payload: dict) -> ItemState:
        """Append durably, then fold; rejection leaves the log untouched."""
        self._require_expert(expert_id)
        if image_id not in self.states:
            raise KeyError(image_id)
        with self._lock:
            # dry-run the transition before anything touches the log
            probe = AnnotationEvent(self.log.next_event_id, expert_id, image_id, kind, payload, 0.0)
            apply_event(self.states[image_id], probe)
            if kind in (EventKind.EDIT_CHOICE, EventKind.REDESIGN_QUESTION):
                edited = apply_edit(self.bundles[image_id], payload.get("fields", {}))
                report = validate_bundle(edited)
                if not report.ok:
                    raise IllegalTransitionError(
                        self.states[image_id], probe,
                        "; ".join(f"{v.rule}: {v.detail}" for v in report.hard_failures),
                    )
            event = self.log.append(expert_id, image_id, kind, payload)
            return self._fold_one(event)

    def state(self, image_id: str) -> ItemState:
        return self.states[image_id]

    def export(self) -> dict[str, QABundle]:
        """Accepted and Answered items only; Excluded never leaves."""
        keep = (ItemStatus.ANSWERED, ItemStatus.ACCEPTED)
        return {
            image_id: self.bundles[image_id]
            for image_id in sorted(self.states)
            if self.states[image_id].status in keep
        }


from pydantic import BaseModel


class EventBody(BaseModel):
    expert_id: str
    image_id: str
    kind: str
    payload: dict = {}


def create_app(service: AnnotationService):
    from fastapi import FastAPI, HTTPException

    app = FastAPI(title="annotation service")

    @app.get("/item/next")
    def item_next(expert: str):
        try:
            item = service.next_item(expert)
        except UnknownExpertError:
            raise HTTPException(status_code=403, detail=f"unknown expert: {expert}")
        if item is None:
            return {"empty": True}
        bundle, state = item
        return {"empty": False, "bundle": bundle.to_json(), "state": state.to_json()}

    @app.post("/event")
    def post_event(body: EventBody):
        try:
            kind = EventKind(body.kind)
        except ValueError:
            raise HTTPException(status_code=400, detail=f"unknown event kind: {body.kind}")
        try:
            state = service.submit(body.expert_id, body.image_id, kind, body.payload)
        except UnknownExpertError:
            raise HTTPException(status_code=403, detail=f"unknown expert: {body.expert_id}")
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown image: {body.image_id}")
        except IllegalTransitionError as e:
            raise HTTPException(
                status_code=409,
                detail={"error": str(e), "state": e.state.to_json()},
            )
        return {"state": state.to_json()}

    @app.get("/state/{image_id}")
    def get_state(image_id: str):
        try:
            return {"state": service.state(image_id).to_json()}
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown image: {image_id}")

    @app.get("/export")
    def get_export():
        return {"bundles": [b.to_json() for _, b in sorted(service.export().items())]}

    return app
