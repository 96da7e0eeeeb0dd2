"""QA bundles: the four text tasks attached to one reference image."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..tasks.text import tokenize

VQA_MAX_WORDS = 5
CAPTION_MIN_WORDS = 30
CAPTION_MAX_WORDS = 40
MCQ_OPTION_COUNT = 4
# wrong options should be roughly as long as the correct one
OPTION_LENGTH_TOLERANCE = 0.5


@dataclass(frozen=True)
class QABundle:
    image_id: str
    yon_question: str
    yon_answer: bool
    mcq_question: str
    mcq_options: tuple[str, str, str, str]
    mcq_correct: int
    vqa_question: str
    vqa_answer: str
    caption: str

    def __post_init__(self):
        if not 0 <= self.mcq_correct < len(self.mcq_options):
            raise ValueError(f"mcq_correct out of range: {self.mcq_correct}")

    def to_json(self) -> dict:
        return {
            "image_id": self.image_id,
            "yon": {"question": self.yon_question, "answer": self.yon_answer},
            "mcq": {
                "question": self.mcq_question,
                "options": list(self.mcq_options),
                "correct": self.mcq_correct,
            },
            "vqa": {"question": self.vqa_question, "answer": self.vqa_answer},
            "cap": {"caption": self.caption},
        }

    @classmethod
    def from_json(cls, d: dict) -> "QABundle":
        opts = d["mcq"]["options"]
        if len(opts) != MCQ_OPTION_COUNT:
            raise ValueError(f"expected {MCQ_OPTION_COUNT} options, got {len(opts)}")
        return cls(
            image_id=d["image_id"],
            yon_question=d["yon"]["question"],
            yon_answer=bool(d["yon"]["answer"]),
            mcq_question=d["mcq"]["question"],
            mcq_options=tuple(opts),
            mcq_correct=int(d["mcq"]["correct"]),
            vqa_question=d["vqa"]["question"],
            vqa_answer=d["vqa"]["answer"],
            caption=d["cap"]["caption"],
        )


@dataclass(frozen=True)
class RuleVerdict:
    rule: str
    level: str  # "pass" | "hard" | "soft"
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    image_id: str
    verdicts: tuple[RuleVerdict, ...]

    @property
    def hard_failures(self) -> tuple[RuleVerdict, ...]:
        return tuple(v for v in self.verdicts if v.level == "hard")

    @property
    def warnings(self) -> tuple[RuleVerdict, ...]:
        return tuple(v for v in self.verdicts if v.level == "soft")

    @property
    def ok(self) -> bool:
        return not self.hard_failures


def _word_count(text: str) -> int:
    return len(tokenize(text))


def validate_bundle(q: QABundle) -> ValidationReport:
    """Hard rules reject the bundle; length-heuristic rules only warn."""
    verdicts: list[RuleVerdict] = []

    n_opts = len(q.mcq_options)
    verdicts.append(
        RuleVerdict("mcq option count", "pass" if n_opts == MCQ_OPTION_COUNT else "hard",
                    f"{n_opts} options")
    )

    n_vqa = _word_count(q.vqa_answer)
    verdicts.append(
        RuleVerdict("vqa answer length", "pass" if 1 <= n_vqa <= VQA_MAX_WORDS else "hard",
                    f"{n_vqa} words, limit {VQA_MAX_WORDS}")
    )

    n_cap = _word_count(q.caption)
    cap_ok = CAPTION_MIN_WORDS <= n_cap <= CAPTION_MAX_WORDS
    verdicts.append(
        RuleVerdict("caption length", "pass" if cap_ok else "hard",
                    f"{n_cap} words, bounds [{CAPTION_MIN_WORDS}, {CAPTION_MAX_WORDS}]")
    )

    correct_len = len(q.mcq_options[q.mcq_correct])
    for i, opt in enumerate(q.mcq_options):
        if i == q.mcq_correct:
            continue
        lo = correct_len * (1.0 - OPTION_LENGTH_TOLERANCE)
        hi = correct_len * (1.0 + OPTION_LENGTH_TOLERANCE)
        ok = lo <= len(opt) <= hi
        verdicts.append(
            RuleVerdict(f"option {i} length", "pass" if ok else "soft",
                        f"{len(opt)} chars vs correct {correct_len}")
        )

    return ValidationReport(q.image_id, tuple(verdicts))


def load_bundles(path: str | Path) -> dict[str, QABundle]:
    """One JSON object per line; keyed by image id."""
    out: dict[str, QABundle] = {}
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            q = QABundle.from_json(json.loads(line))
            if q.image_id in out:
                raise ValueError(f"duplicate bundle for {q.image_id}")
            out[q.image_id] = q
    return out


def save_bundles(bundles: dict[str, QABundle], path: str | Path) -> None:
    with open(path, "w") as f:
        for image_id in sorted(bundles):
            f.write(json.dumps(bundles[image_id].to_json(), sort_keys=True) + "\n")
