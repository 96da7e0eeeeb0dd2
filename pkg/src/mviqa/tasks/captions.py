"""Captioning metrics: BLEU-4, CIDEr-D, and the summed caption score.

SPICE is never computed in-process; an external adapter can be plugged in
and its absence is flagged rather than silently ignored.
"""
from __future__ import annotations

import math
import subprocess
from collections import Counter, defaultdict
from dataclasses import dataclass

from .text import tokenize
from .types import Orientation, Task, TaskScore

_EPS = 1e-9


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def bleu(cand: str, refs: list[str], max_n: int = 4) -> float:
    """BLEU with clipped modified precision, add-epsilon smoothing, and
    the standard brevity penalty."""
    cand_toks = tokenize(cand)
    ref_toks = [tokenize(r) for r in refs]
    if not cand_toks or not any(ref_toks):
        return 0.0
    log_sum = 0.0
    orders = 0
    for n in range(1, max_n + 1):
        c_counts = _ngrams(cand_toks, n)
        total = sum(c_counts.values())
        if total == 0:
            # candidate too short for this order; drop it from the mean
            continue
        clipped = 0
        for gram, count in c_counts.items():
            max_ref = max((_ngrams(rt, n)[gram] for rt in ref_toks), default=0)
            clipped += min(count, max_ref)
        p_n = clipped / total if clipped > 0 else _EPS
        log_sum += math.log(p_n)
        orders += 1
    if orders == 0:
        return 0.0
    c_len = len(cand_toks)
    r_len = min((len(rt) for rt in ref_toks), key=lambda L: (abs(L - c_len), L))
    bp = 1.0 if c_len > r_len else math.exp(1.0 - r_len / c_len)
    return bp * math.exp(log_sum / orders)


def modified_precision(cand: str, refs: list[str], n: int) -> float:
    """Clipped n-gram precision on its own (the worked-example quantity)."""
    c_counts = _ngrams(tokenize(cand), n)
    total = sum(c_counts.values())
    if total == 0:
        return 0.0
    clipped = sum(
        min(count, max((_ngrams(tokenize(r), n)[gram] for r in refs), default=0))
        for gram, count in c_counts.items()
    )
    return clipped / total


@dataclass
class CorpusStats:
    """Document frequencies over the evaluation set, for CIDEr's IDF."""

    doc_freq: dict[int, dict[tuple, int]]
    num_docs: int

    @classmethod
    def from_captions(cls, captions: list[str], max_n: int = 4) -> "CorpusStats":
        df: dict[int, dict[tuple, int]] = {n: defaultdict(int) for n in range(1, max_n + 1)}
        for cap in captions:
            toks = tokenize(cap)
            for n in range(1, max_n + 1):
                for gram in set(_ngrams(toks, n)):
                    df[n][gram] += 1
        return cls(doc_freq={n: dict(d) for n, d in df.items()}, num_docs=len(captions))


def _tfidf_vec(tokens: list[str], n: int, stats: CorpusStats):
    counts = _ngrams(tokens, n)
    vec = {}
    for gram, tf in counts.items():
        df = max(1.0, float(stats.doc_freq[n].get(gram, 0)))
        vec[gram] = tf * (math.log(float(stats.num_docs)) - math.log(df))
    norm = math.sqrt(sum(v * v for v in vec.values()))
    return vec, norm


def cider(cand: str, refs: list[str], stats: CorpusStats, max_n: int = 4, sigma: float = 6.0) -> float:
    """CIDEr-D: length-penalized clipped TF-IDF cosine, averaged over
    n-gram sizes and references, scaled by 10."""
    if stats.num_docs == 0:
        raise ValueError("empty corpus stats")
    cand_toks = tokenize(cand)
    total = 0.0
    for n in range(1, max_n + 1):
        c_vec, c_norm = _tfidf_vec(cand_toks, n, stats)
        acc = 0.0
        for ref in refs:
            ref_toks = tokenize(ref)
            r_vec, r_norm = _tfidf_vec(ref_toks, n, stats)
            val = sum(min(c_vec[g], r_vec[g]) * r_vec[g] for g in c_vec if g in r_vec)
            if c_norm > 0 and r_norm > 0:
                val /= c_norm * r_norm
            delta = len(cand_toks) - len(ref_toks)
            val *= math.exp(-(delta * delta) / (2.0 * sigma * sigma))
            acc += val
        total += acc / len(refs)
    return total / max_n * 10.0


class SpiceAdapter:
    """One-shot subprocess adapter to an external SPICE scorer.

    The command receives one JSON line {"id", "candidate", "references"}
    on stdin and must answer one JSON line {"id", "value"}.
    """

    def __init__(self, command: list[str], timeout: float = 60.0):
        self.command = command
        self.timeout = timeout

    def score(self, cand: str, refs: list[str]) -> float:
        import json

        payload = json.dumps({"id": "0", "candidate": cand, "references": refs})
        proc = subprocess.run(
            self.command,
            input=payload + "\n",
            capture_output=True,
            text=True,
            timeout=self.timeout,
        )
        if proc.returncode != 0:
            raise RuntimeError(f"spice adapter failed: {proc.stderr.strip()}")
        return float(json.loads(proc.stdout.splitlines()[0])["value"])


def score_cap(
    ref: str,
    dis: str,
    stats: CorpusStats | None,
    spice: SpiceAdapter | None = None,
) -> TaskScore:
    """Sum of the available caption evaluators, with contributors flagged."""
    parts = {}
    parts["bleu"] = bleu(dis, [ref])
    if stats is not None:
        parts["cider"] = cider(dis, [ref], stats)
    if spice is not None:
        parts["spice"] = spice.score(dis, [ref])
    if not parts:
        raise ValueError("no caption evaluator available")
    flags = tuple(sorted(f"{k}=present" for k in parts)) + (
        () if spice is not None else ("spice=absent",)
    )
    return TaskScore(Task.CAP, sum(parts.values()), Orientation.SIMILARITY, flags=flags)
