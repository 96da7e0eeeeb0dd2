from .corr import (
    LogisticFit,
    UndefinedCorrelationError,
    fit_logistic_4p,
    fractional_ranks,
    krcc,
    pearson,
    plcc,
    plcc_logistic,
    srcc,
)
from .features import FeatureProfile, features
from .report import (
    AlignmentError,
    CorrelationReport,
    align,
    consistency,
    correlate,
    evaluate_metric,
    read_score_table,
    write_reports,
)

__all__ = [
    "AlignmentError",
    "CorrelationReport",
    "FeatureProfile",
    "LogisticFit",
    "UndefinedCorrelationError",
    "align",
    "consistency",
    "correlate",
    "evaluate_metric",
    "features",
    "fit_logistic_4p",
    "fractional_ranks",
    "krcc",
    "pearson",
    "plcc",
    "plcc_logistic",
    "read_score_table",
    "srcc",
    "write_reports",
]
