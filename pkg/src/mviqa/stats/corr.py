"""SRCC / KRCC / PLCC with explicit tie handling."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class UndefinedCorrelationError(ValueError):
    """A constant input vector makes the correlation undefined."""


def _check(x: np.ndarray, y: np.ndarray, min_n: int = 3) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"aligned 1-D vectors required, got {x.shape} vs {y.shape}")
    if x.size < min_n:
        raise ValueError(f"need at least {min_n} observations, got {x.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("inputs must be finite")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise UndefinedCorrelationError("constant vector")
    return x, y


def fractional_ranks(v: np.ndarray) -> np.ndarray:
    """Average ranks for ties, 1-based."""
    order = np.argsort(v, kind="stable")
    ranks = np.empty(v.size, dtype=np.float64)
    i = 0
    while i < v.size:
        j = i
        while j + 1 < v.size and v[order[j + 1]] == v[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def pearson(x: np.ndarray, y: np.ndarray) -> float:
    xc = x - x.mean()
    yc = y - y.mean()
    return float(np.dot(xc, yc) / np.sqrt(np.dot(xc, xc) * np.dot(yc, yc)))


def srcc(x, y) -> float:
    """Spearman: Pearson correlation of fractional ranks."""
    x, y = _check(x, y)
    return pearson(fractional_ranks(x), fractional_ranks(y))


def krcc(x, y) -> float:
    """Kendall tau-b (tie-corrected)."""
    x, y = _check(x, y)
    from scipy import stats as sps

    tau = sps.kendalltau(x, y).statistic
    return float(tau)


def plcc(x, y) -> float:
    """Pearson linear correlation."""
    x, y = _check(x, y)
    return pearson(x, y)


@dataclass
class LogisticFit:
    params: tuple[float, float, float, float]
    converged: bool


def fit_logistic_4p(x: np.ndarray, y: np.ndarray) -> LogisticFit:
    """Least-squares 4-parameter logistic y ~ b1/(1+exp(-b2(x-b3))) + b4."""
    from scipy.optimize import curve_fit

    def model(v, b1, b2, b3, b4):
        return b1 / (1.0 + np.exp(-b2 * (v - b3))) + b4

    mid = float(x[np.argmin(np.abs(y - (np.min(y) + np.max(y)) / 2.0))])
    p0 = [np.ptp(y), 1.0 / max(np.std(x), 1e-6), mid, float(np.min(y))]
    try:
        import warnings

        with warnings.catch_warnings():
            # convergence is reported through the flag, not a warning
            warnings.simplefilter("ignore")
            params, _ = curve_fit(model, x, y, p0=p0, maxfev=20000)
        return LogisticFit(tuple(float(p) for p in params), True)
    except Exception:
        return LogisticFit((1.0, 1.0, 0.0, 0.0), False)


def plcc_logistic(x, y) -> tuple[float, LogisticFit]:
    """PLCC after mapping x through a fitted 4-parameter logistic.

    Falls back to raw PLCC when the fit does not converge; the fit carries
    the flag."""
    x, y = _check(x, y)
    fit = fit_logistic_4p(x, y)
    if not fit.converged:
        return pearson(x, y), fit
    b1, b2, b3, b4 = fit.params
    mapped = b1 / (1.0 + np.exp(-b2 * (x - b3))) + b4
    if np.ptp(mapped) == 0:
        return pearson(x, y), LogisticFit(fit.params, False)
    return pearson(mapped, y), fit
