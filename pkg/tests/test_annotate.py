"""Bundle validation, workflow state machine, event log, and HTTP service."""
import json

import pytest
from fastapi.testclient import TestClient

from mviqa.annotate import (
    AnnotationEvent,
    AnnotationService,
    EventKind,
    EventLog,
    IllegalTransitionError,
    ItemStatus,
    QABundle,
    UnknownExpertError,
    apply_event,
    fold,
    validate_bundle,
)
from mviqa.annotate.service import create_app

CAPTION = " ".join(["word"] * 35)


def bundle(i: int) -> QABundle:
    return QABundle(f"img{i}", "q?", True, "m?",
                    ("aaaa", "bbbb", "cccc", "dddd"), 0, "v?", "blue", CAPTION)


@pytest.fixture
def corpus():
    return {f"img{i}": bundle(i) for i in range(4)}


@pytest.fixture
def svc(corpus, tmp_path):
    return AnnotationService(corpus, tmp_path, ["alice", "bob", "carol"])


class TestValidation:
    def test_clean_bundle_passes(self):
        rep = validate_bundle(bundle(0))
        assert rep.ok and not rep.hard_failures

    def test_short_caption_is_hard_failure(self):
        b = bundle(0)
        bad = QABundle(b.image_id, b.yon_question, b.yon_answer, b.mcq_question,
                       b.mcq_options, b.mcq_correct, b.vqa_question, b.vqa_answer,
                       " ".join(["word"] * 20))
        rep = validate_bundle(bad)
        assert not rep.ok and any("caption" in v.rule for v in rep.hard_failures)

    def test_long_vqa_answer_is_hard_failure(self):
        b = bundle(0)
        bad = QABundle(b.image_id, b.yon_question, b.yon_answer, b.mcq_question,
                       b.mcq_options, b.mcq_correct, b.vqa_question,
                       "one two three four five six", b.caption)
        assert not validate_bundle(bad).ok

    def test_oversized_wrong_option_is_soft_warning(self):
        b = bundle(0)
        warned = QABundle(b.image_id, b.yon_question, b.yon_answer, b.mcq_question,
                          ("aaaa", "b" * 12, "cccc", "dddd"), 0,
                          b.vqa_question, b.vqa_answer, b.caption)
        rep = validate_bundle(warned)
        assert rep.ok  # soft warnings do not block
        assert any(v.level == "soft" for v in rep.verdicts)


class TestStateMachine:
    def test_answer_then_accept_flow(self, svc):
        got, state = svc.next_item("alice")
        assert got.image_id == "img0" and state.status is ItemStatus.PENDING
        assert svc.submit("alice", "img0", EventKind.ANSWER, {"yon": True}).status \
            is ItemStatus.ANSWERED

    def test_review_requires_awaiting_review(self, svc):
        svc.submit("alice", "img0", EventKind.ANSWER, {})
        with pytest.raises(IllegalTransitionError):
            svc.submit("bob", "img0", EventKind.REVIEW_VERDICT, {"accepted": True})

    def test_redesign_and_review_by_other_expert(self, svc):
        svc.submit("bob", "img1", EventKind.UNLOCK, {})
        st = svc.submit("bob", "img1", EventKind.REDESIGN_QUESTION,
                        {"fields": {"mcq_question": "new?"}})
        assert st.status is ItemStatus.AWAITING_REVIEW and st.author == "bob"
        with pytest.raises(IllegalTransitionError):
            svc.submit("bob", "img1", EventKind.REVIEW_VERDICT, {"accepted": True})
        st = svc.submit("alice", "img1", EventKind.REVIEW_VERDICT, {"accepted": True})
        assert st.status is ItemStatus.ACCEPTED
        assert svc.bundles["img1"].mcq_question == "new?"

    def test_rejected_review_resets_to_pending(self, svc):
        svc.submit("bob", "img1", EventKind.UNLOCK, {})
        svc.submit("bob", "img1", EventKind.EDIT_CHOICE, {"fields": {"mcq_question": "x?"}})
        st = svc.submit("alice", "img1", EventKind.REVIEW_VERDICT, {"accepted": False})
        assert st.status is ItemStatus.PENDING
        assert svc.bundles["img1"].mcq_question == "m?"

    def test_author_never_offered_own_item(self, svc):
        svc.submit("bob", "img1", EventKind.UNLOCK, {})
        svc.submit("bob", "img1", EventKind.EDIT_CHOICE, {"fields": {"mcq_question": "x?"}})
        for _ in range(10):
            nxt = svc.next_item("bob")
            if nxt is None:
                break
            assert nxt[0].image_id != "img1"
            svc.submit("bob", nxt[0].image_id, EventKind.ANSWER, {})

    def test_invalid_edit_blocked_and_log_untouched(self, svc):
        svc.submit("carol", "img2", EventKind.UNLOCK, {})
        n = len(svc.log.events)
        with pytest.raises(IllegalTransitionError, match="caption"):
            svc.submit("carol", "img2", EventKind.EDIT_CHOICE,
                       {"fields": {"caption": "too short"}})
        assert svc.state("img2").status is ItemStatus.UNDER_EDIT
        assert len(svc.log.events) == n

    def test_uneditable_field_rejected(self, svc):
        svc.submit("carol", "img2", EventKind.UNLOCK, {})
        with pytest.raises(IllegalTransitionError):
            svc.submit("carol", "img2", EventKind.EDIT_CHOICE,
                       {"fields": {"image_id": "imposter"}})

    def test_excluded_is_terminal(self, svc):
        assert svc.submit("alice", "img3", EventKind.EXCLUDE_NSFW, {}).status \
            is ItemStatus.EXCLUDED
        for kind in EventKind:
            with pytest.raises(IllegalTransitionError):
                svc.submit("alice", "img3", kind, {})

    def test_export_contains_answered_and_accepted_only(self, svc):
        svc.submit("alice", "img0", EventKind.ANSWER, {})
        svc.submit("bob", "img1", EventKind.UNLOCK, {})
        svc.submit("bob", "img1", EventKind.EDIT_CHOICE, {"fields": {"vqa_answer": "red"}})
        svc.submit("alice", "img1", EventKind.REVIEW_VERDICT, {"accepted": True})
        svc.submit("alice", "img3", EventKind.EXCLUDE_UNNATURAL, {})
        assert set(svc.export()) == {"img0", "img1"}

    def test_unknown_expert_rejected(self, svc):
        with pytest.raises(UnknownExpertError):
            svc.next_item("mallory")

    def test_unknown_image_rejected(self, svc):
        with pytest.raises(KeyError):
            svc.submit("alice", "nope", EventKind.ANSWER, {})


class TestPersistence:
    def test_replay_reproduces_state(self, corpus, tmp_path):
        svc = AnnotationService(corpus, tmp_path, ["alice", "bob"])
        svc.submit("alice", "img0", EventKind.ANSWER, {})
        svc.submit("bob", "img1", EventKind.UNLOCK, {})
        svc.submit("bob", "img1", EventKind.REDESIGN_QUESTION,
                   {"fields": {"yon_question": "really?"}})
        again = AnnotationService(corpus, tmp_path, ["alice", "bob"])
        assert again.states == svc.states
        assert again.bundles == svc.bundles
        assert not again.log.recovery.truncated

    def test_corrupt_tail_truncated_once(self, corpus, tmp_path):
        svc = AnnotationService(corpus, tmp_path, ["alice"])
        svc.submit("alice", "img0", EventKind.ANSWER, {})
        n = len(svc.log.events)
        with open(tmp_path / "events.jsonl", "a") as f:
            f.write('{"event_id": 99, "bro')
        recovered = AnnotationService(corpus, tmp_path, ["alice"])
        assert recovered.log.recovery.truncated
        assert len(recovered.log.events) == n
        assert recovered.states == svc.states
        clean = AnnotationService(corpus, tmp_path, ["alice"])
        assert not clean.log.recovery.truncated

    def test_event_ids_monotone(self, corpus, tmp_path):
        svc = AnnotationService(corpus, tmp_path, ["alice"])
        for img in ("img0", "img1", "img2"):
            svc.submit("alice", img, EventKind.ANSWER, {})
        ids = [e.event_id for e in svc.log.events]
        assert ids == sorted(ids) and len(set(ids)) == len(ids)

    def test_non_monotone_tail_dropped(self, corpus, tmp_path):
        svc = AnnotationService(corpus, tmp_path, ["alice"])
        svc.submit("alice", "img0", EventKind.ANSWER, {})
        path = tmp_path / "events.jsonl"
        lines = path.read_text().splitlines()
        dup = json.loads(lines[-1])
        dup["image_id"] = "img1"  # same event_id again: breaks monotonicity
        with open(path, "a") as f:
            f.write(json.dumps(dup) + "\n")
        recovered = AnnotationService(corpus, tmp_path, ["alice"])
        assert recovered.log.recovery.truncated
        assert recovered.states == svc.states


class TestFold:
    def test_fold_matches_stepwise_application(self, corpus):
        events = [
            AnnotationEvent(1, "alice", "img0", EventKind.ANSWER, {}, 0.0),
            AnnotationEvent(2, "bob", "img0", EventKind.UNLOCK, {}, 1.0),
            AnnotationEvent(3, "bob", "img0", EventKind.EDIT_CHOICE,
                            {"fields": {"vqa_answer": "red"}}, 2.0),
            AnnotationEvent(4, "alice", "img0", EventKind.REVIEW_VERDICT,
                            {"accepted": True}, 3.0),
        ]
        state = fold("img0", events)
        assert state.status is ItemStatus.ACCEPTED

        from mviqa.annotate.events import ItemState
        step = ItemState("img0")
        for e in events:
            step = apply_event(step, e)
        assert step == state


class TestHttp:
    @pytest.fixture
    def client(self, svc):
        return TestClient(create_app(svc))

    def test_next_item(self, client):
        r = client.get("/item/next", params={"expert": "alice"})
        assert r.status_code == 200 and not r.json()["empty"]

    def test_unknown_expert_403(self, client):
        assert client.get("/item/next", params={"expert": "zz"}).status_code == 403

    def test_event_flow_and_conflict(self, client):
        body = {"expert_id": "alice", "image_id": "img0", "kind": "Answer", "payload": {}}
        r = client.post("/event", json=body)
        assert r.status_code == 200 and r.json()["state"]["status"] == "Answered"
        r = client.post("/event", json=body)
        assert r.status_code == 409
        assert r.json()["detail"]["state"]["status"] == "Answered"

    def test_bad_kind_400(self, client):
        r = client.post("/event", json={"expert_id": "alice", "image_id": "img0",
                                        "kind": "Bogus", "payload": {}})
        assert r.status_code == 400

    def test_unknown_image_404(self, client):
        r = client.post("/event", json={"expert_id": "alice", "image_id": "zzz",
                                        "kind": "Answer", "payload": {}})
        assert r.status_code == 404

    def test_state_and_export(self, client):
        client.post("/event", json={"expert_id": "alice", "image_id": "img0",
                                    "kind": "Answer", "payload": {}})
        assert client.get("/state/img0").json()["state"]["status"] == "Answered"
        exported = client.get("/export").json()["bundles"]
        assert [b["image_id"] for b in exported] == ["img0"]
