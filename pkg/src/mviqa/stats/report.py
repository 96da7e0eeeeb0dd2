"""IQA-metric evaluation reports over pair-id-aligned score vectors."""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corr import UndefinedCorrelationError, krcc, plcc, plcc_logistic, srcc


class AlignmentError(ValueError):
    """Score vectors disagree on pair ids."""

    def __init__(self, missing_id: str):
        super().__init__(f"id alignment failure, first offending id: {missing_id}")
        self.missing_id = missing_id


@dataclass(frozen=True)
class CorrelationReport:
    subset: str
    n: int
    srcc: float
    krcc: float
    plcc: float
    logistic_params: tuple[float, float, float, float] | None = None
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        d = {
            "subset": self.subset,
            "n": self.n,
            "srcc": self.srcc,
            "krcc": self.krcc,
            "plcc": self.plcc,
        }
        if self.logistic_params is not None:
            d["logistic_params"] = list(self.logistic_params)
        if self.flags:
            d["flags"] = list(self.flags)
        return d


def align(preds: dict[str, float], mos: dict[str, float]) -> tuple[list[str], np.ndarray, np.ndarray]:
    """Shared, sorted id order; raises on the first mismatch."""
    for pid in sorted(mos):
        if pid not in preds:
            raise AlignmentError(pid)
    for pid in sorted(preds):
        if pid not in mos:
            raise AlignmentError(pid)
    ids = sorted(mos)
    x = np.array([preds[i] for i in ids])
    y = np.array([mos[i] for i in ids])
    return ids, x, y


def correlate(subset: str, x: np.ndarray, y: np.ndarray, logistic: bool = False) -> CorrelationReport:
    if logistic:
        p, fit = plcc_logistic(x, y)
        flags = () if fit.converged else ("logistic-fallback-raw",)
        return CorrelationReport(
            subset, x.size, srcc(x, y), krcc(x, y), p,
            logistic_params=fit.params if fit.converged else None, flags=flags,
        )
    return CorrelationReport(subset, x.size, srcc(x, y), krcc(x, y), plcc(x, y))


def evaluate_metric(
    preds: dict[str, float],
    mos: dict[str, float],
    subsets: dict[str, set[str]] | None = None,
    logistic: bool = False,
) -> list[CorrelationReport]:
    """One report per subset plus the overall union.

    Subsets with fewer than 3 pairs or a constant vector are skipped with
    a warning on stderr."""
    ids, x, y = align(preds, mos)
    reports = [correlate("overall", x, y, logistic)]
    index = {pid: k for k, pid in enumerate(ids)}
    for name in sorted(subsets or {}):
        members = [index[p] for p in sorted(subsets[name]) if p in index]
        if len(members) < 3:
            print(f"warning: subset {name!r} has n={len(members)} < 3, skipped", file=sys.stderr)
            continue
        sel = np.array(members)
        try:
            reports.append(correlate(name, x[sel], y[sel], logistic))
        except UndefinedCorrelationError:
            print(f"warning: subset {name!r} correlation undefined, skipped", file=sys.stderr)
    return reports


def consistency(mos_a: dict[str, float], mos_b: dict[str, float]) -> CorrelationReport:
    """SRCC agreement between two labelings of the same pairs."""
    _, x, y = align(mos_a, mos_b)
    return correlate("consistency", x, y)


def write_reports(reports: list[CorrelationReport], out_path: str | Path) -> None:
    """Delimited table plus a machine-readable JSON summary alongside."""
    out_path = Path(out_path)
    with open(out_path, "w") as f:
        f.write("subset\tn\tsrcc\tkrcc\tplcc\n")
        for r in reports:
            f.write(f"{r.subset}\t{r.n}\t{r.srcc:.6f}\t{r.krcc:.6f}\t{r.plcc:.6f}\n")
    with open(out_path.with_suffix(".json"), "w") as f:
        json.dump([r.to_dict() for r in reports], f, indent=2, sort_keys=True)
        f.write("\n")


def read_score_table(path: str | Path) -> dict[str, float]:
    """Delimited (pair_id, score) ingest; '#' lines and a header allowed."""
    out: dict[str, float] = {}
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.replace(",", "\t").split("\t")
            if parts[0] in ("pair_id", "id"):
                continue
            out[parts[0]] = float(parts[1])
    return out
