"""Inter-subject consistency on the oriented per-dimension scores."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from ..stats.corr import UndefinedCorrelationError, srcc
from .mos import ScoreRecord, SubjectScoreTable, oriented_value


@dataclass(frozen=True)
class AgreementReport:
    dimension: str
    subjects: tuple[str, ...]
    matrix: np.ndarray  # pairwise SRCC, NaN where undefined
    mean_srcc: float
    excluded: tuple[str, ...]  # constant-response subjects


def subject_agreement(table: SubjectScoreTable, dimension: str) -> AgreementReport:
    """Pairwise SRCC between subjects over their shared pairs.

    Subjects whose responses are constant have no rank ordering and are
    excluded rather than silently scored."""
    per_subject: dict[str, dict[str, float]] = defaultdict(dict)
    for r in table.records:
        if r.dimension == dimension:
            per_subject[r.subject_id][r.pair_id] = oriented_value(r)
    excluded = tuple(
        s for s, vals in sorted(per_subject.items())
        if len(set(vals.values())) < 2
    )
    subjects = tuple(s for s in sorted(per_subject) if s not in excluded)
    n = len(subjects)
    matrix = np.full((n, n), np.nan)
    vals = []
    for i in range(n):
        matrix[i, i] = 1.0
        for j in range(i + 1, n):
            shared = sorted(set(per_subject[subjects[i]]) & set(per_subject[subjects[j]]))
            if len(shared) < 3:
                continue
            a = np.array([per_subject[subjects[i]][p] for p in shared])
            b = np.array([per_subject[subjects[j]][p] for p in shared])
            try:
                rho = srcc(a, b)
            except UndefinedCorrelationError:
                continue
            matrix[i, j] = matrix[j, i] = rho
            vals.append(rho)
    mean = float(np.mean(vals)) if vals else float("nan")
    return AgreementReport(dimension, subjects, matrix, mean, excluded)
