from .agreement import AgreementReport, subject_agreement
from .mos import (
    DIMENSIONS,
    DegenerateDimensionError,
    MosRecord,
    NormalizationParams,
    ScoreRecord,
    SubjectScoreTable,
    compute_mos,
    fit_normalization,
    orient,
    oriented_value,
    read_mos_table,
    write_mos_table,
)
from .splits import (
    MILD_SEVERE_THRESHOLD,
    SplitAssignment,
    cell_means,
    classify_cells,
    ref_of,
    split_mild_severe,
    split_train_val,
)

__all__ = [
    "AgreementReport",
    "DIMENSIONS",
    "DegenerateDimensionError",
    "MILD_SEVERE_THRESHOLD",
    "MosRecord",
    "NormalizationParams",
    "ScoreRecord",
    "SplitAssignment",
    "SubjectScoreTable",
    "cell_means",
    "classify_cells",
    "compute_mos",
    "fit_normalization",
    "orient",
    "oriented_value",
    "read_mos_table",
    "ref_of",
    "split_mild_severe",
    "split_train_val",
    "subject_agreement",
    "write_mos_table",
]
