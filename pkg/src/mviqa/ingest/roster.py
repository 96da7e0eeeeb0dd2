"""Who answered what: the subject roster and its coverage invariant."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..tasks.types import Task

LMM_TASKS = frozenset({Task.YON, Task.MCQ, Task.VQA, Task.CAP})
LMM_COUNT = 15
SPECIALIST_COUNT = 5


class SubjectKind(str, Enum):
    LMM = "LMM"
    SEG_MODEL = "SEG-model"
    DET_MODEL = "DET-model"
    RET_MODEL = "RET-model"
    MOCK = "mock"


@dataclass(frozen=True)
class Subject:
    subject_id: str
    name: str
    kind: SubjectKind
    tasks: frozenset[Task]


class RosterError(ValueError):
    pass


@dataclass(frozen=True)
class SubjectRoster:
    subjects: dict[str, Subject]

    def __getitem__(self, subject_id: str) -> Subject:
        return self.subjects[subject_id]

    def __contains__(self, subject_id: str) -> bool:
        return subject_id in self.subjects

    def covering(self, task: Task) -> list[Subject]:
        return [s for s in sorted(self.subjects.values(), key=lambda s: s.subject_id)
                if task in s.tasks]

    def check_coverage(self) -> None:
        """15 subjects over the four text tasks, 5 each for SEG/DET/RET."""
        lmm_like = [s for s in self.subjects.values() if LMM_TASKS <= s.tasks]
        if len(lmm_like) != LMM_COUNT:
            raise RosterError(
                f"expected {LMM_COUNT} subjects covering the text tasks, found {len(lmm_like)}"
            )
        for task in (Task.SEG, Task.DET, Task.RET):
            n = len(self.covering(task))
            if n != SPECIALIST_COUNT:
                raise RosterError(
                    f"expected {SPECIALIST_COUNT} subjects covering {task.value}, found {n}"
                )


def default_mock_roster() -> SubjectRoster:
    """Mock stand-ins with the same shape as the real scoring roster."""
    subjects: dict[str, Subject] = {}
    for i in range(LMM_COUNT):
        sid = f"lmm{i:02d}"
        subjects[sid] = Subject(sid, f"mock text subject {i}", SubjectKind.MOCK, LMM_TASKS)
    for task, prefix in ((Task.SEG, "seg"), (Task.DET, "det"), (Task.RET, "ret")):
        for i in range(SPECIALIST_COUNT):
            sid = f"{prefix}{i:02d}"
            subjects[sid] = Subject(
                sid, f"mock {task.value} subject {i}", SubjectKind.MOCK, frozenset({task})
            )
    roster = SubjectRoster(subjects)
    roster.check_coverage()
    return roster
