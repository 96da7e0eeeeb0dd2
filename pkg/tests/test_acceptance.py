"""Release acceptance criteria.

Each test prints a single PASS/FAIL line naming its criterion, so the run
doubles as a sign-off checklist. Tolerances are exact where the quantity is
exact and 1e-12/1e-9 where float arithmetic is involved.
"""
import csv
import json
import time
from pathlib import Path

import numpy as np
import pytest

from mviqa.aggregate import (
    DIMENSIONS,
    MILD_SEVERE_THRESHOLD,
    ScoreRecord,
    SubjectScoreTable,
    classify_cells,
    compute_mos,
    fit_normalization,
    ref_of,
    split_train_val,
)
from mviqa.annotate.qa import QABundle
from mviqa.corruption.dataset import (
    PairEntry,
    ReferenceEntry,
    generate_dataset,
)
from mviqa.corruption.kinds import CATEGORY, Category, CorruptionKind, CorruptionSpec
from mviqa.corruption.schedule import ParamSchedule
from mviqa.corruption.synth import apply
from mviqa.imgcore.buffer import ImageBuf, save_image
from mviqa.imgcore.ops import psnr
from mviqa.ingest import (
    default_mock_roster,
    generate_mock_responses,
    score_responses,
)
from mviqa.ingest.export import ANNOTATIONS_PER_PAIR, expected_annotations
from mviqa.stats.corr import krcc, pearson, plcc, srcc
from mviqa.stats.report import evaluate_metric
from mviqa.tasks.captions import CorpusStats, bleu, cider
from mviqa.tasks.scoring import box_iou, mask_iou, score_mcq, score_ret, softmax
from mviqa.tasks.types import (
    LogitQuad,
    Orientation,
    RetrievalRanking,
    SegMask,
    Task,
    TaskScore,
)

DATA = Path(__file__).parent / "data"


def verdict(name: str, ok: bool) -> None:
    print(f"\n[{'PASS' if ok else 'FAIL'}] {name}")
    assert ok, name


def fixture_images(n, size=96, seed=404):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        data = rng.integers(0, 256, (size, size, 3), dtype=np.uint8)
        y, x = rng.integers(8, size - 40, 2)
        data[y:y + 32, x:x + 32] = rng.integers(0, 256, 3, dtype=np.uint8)
        out.append(ImageBuf(data))
    return out


CAPTION = " ".join(f"word{i}" for i in range(32))


def qa_bundle(r):
    return QABundle(r, "is there a block", True, "what shape",
                    ("square", "circle", "triangle", "hexagon"), 0,
                    "what shape", "a red square", CAPTION)


def run_pipeline(tmp_path, n_refs, sensitivity, seed=21):
    """corrupt -> mock -> score for a synthetic reference set."""
    refs = []
    for i, img in enumerate(fixture_images(n_refs)):
        ref_id = f"a{i:03d}"
        path = tmp_path / f"{ref_id}.png"
        save_image(img, path)
        refs.append(ReferenceEntry(ref_id, "synthetic", str(path)))
    sched = ParamSchedule.default()
    summary = generate_dataset(refs, sched, seed, tmp_path / "run", jobs=4)
    qa = {r.ref_id: qa_bundle(r.ref_id) for r in refs}
    responses = generate_mock_responses(
        default_mock_roster(), summary.pairs, qa, sched, sensitivity, seed,
        mask_dir=tmp_path / "masks")
    table, errors = score_responses(summary.pairs, responses, mask_base=None)
    assert errors == []
    return summary, table, sched


class TestCorruptionDeterminism:
    def test_regenerating_is_byte_identical(self, tmp_path):
        t0 = time.monotonic()
        refs = []
        for i, img in enumerate(fixture_images(5)):
            path = tmp_path / f"d{i}.png"
            save_image(img, path)
            refs.append(ReferenceEntry(f"d{i}", "synthetic", str(path)))
        sched = ParamSchedule.default()
        a = generate_dataset(refs, sched, 77, tmp_path / "a", jobs=2)
        b = generate_dataset(refs, sched, 77, tmp_path / "b", jobs=4)
        same = all(
            (tmp_path / "a" / pa.path).read_bytes()
            == (tmp_path / "b" / pb.path).read_bytes()
            for pa, pb in zip(a.pairs, b.pairs)
        )
        elapsed = time.monotonic() - t0
        verdict(
            f"corruption determinism: 5 refs x 30 kinds regenerated byte-identical "
            f"in {elapsed:.1f}s (< 120s)",
            same and len(a.pairs) == 150 and elapsed < 120,
        )


class TestSeverityMonotonicity:
    MONOTONE_KINDS = sorted(
        {k for k, c in CATEGORY.items()
         if c in (Category.BLUR, Category.NOISE, Category.COMPRESSION)}
        | {CorruptionKind.RESOLUTION_LIMIT},
        key=lambda k: k.value,
    )

    def test_mean_psnr_non_increasing_and_severity_increasing(self):
        sched = ParamSchedule.default()
        images = fixture_images(20, size=96)
        bad = []
        for kind in self.MONOTONE_KINDS:
            means = []
            for level in range(1, 6):
                spec = CorruptionSpec(kind, level, 13)
                vals = [psnr(img, apply(img, spec, sched)) for img in images]
                means.append(float(np.mean(vals)))
            if any(b > a + 1e-9 for a, b in zip(means, means[1:])):
                bad.append((kind.value, means))
        sev_ok = all(
            all(b > a for a, b in zip(s, s[1:]))
            for s in (
                [sched.severity_of(CorruptionSpec(k, lv, 0)) for lv in range(1, 6)]
                for k in CorruptionKind
            )
        )
        verdict(
            f"severity monotonicity: mean PSNR non-increasing across levels for "
            f"{len(self.MONOTONE_KINDS)} distortion kinds on 20 images, and the "
            f"declared severity scale strictly increases for all 30 kinds",
            not bad and sev_ok,
        )
        assert not bad, bad


class TestScorerOracles:
    def test_scorers_match_independent_oracles(self, rng):
        ok = True
        # mask overlap: score equals a direct pixel count
        for _ in range(100):
            a = SegMask(rng.random((24, 24)) < 0.5)
            b = SegMask(rng.random((24, 24)) < 0.5)
            inter = int(np.sum(a.bits & b.bits))
            union = int(np.sum(a.bits | b.bits))
            want = 1.0 if union == 0 else inter / union
            ok &= mask_iou(a, b) == want
        # four-option similarity: scored value equals the closed-form cosine
        for _ in range(100):
            r = LogitQuad(*rng.normal(size=4))
            d = LogitQuad(*rng.normal(size=4))
            p = softmax(np.array([r.a, r.b, r.c, r.d]))
            q = softmax(np.array([d.a, d.b, d.c, d.d]))
            want = float(np.dot(p, q) / (np.linalg.norm(p) * np.linalg.norm(q)))
            ok &= abs(score_mcq(r, d).value - want) < 1e-12
        # retrieval: enumerate hits at cutoffs by hand
        for _ in range(100):
            ref = RetrievalRanking(tuple(rng.permutation(12).tolist()))
            dis = RetrievalRanking(tuple(rng.permutation(12).tolist()))
            anchor = ref.labels[0]
            want = sum(anchor in dis.labels[:k] for k in (1, 5, 10))
            ok &= score_ret(ref, dis).value == float(want)
        # n-gram overlap on a fully worked example: matched n-grams counted
        # by hand are 5/8, 3/7, 2/6, and 1/5 for n = 1..4
        cand = "the cat sat on that mat over there"
        ref = "the cat sat on the mat"
        want_bleu = float(np.exp(np.mean(np.log([5 / 8, 3 / 7, 2 / 6, 1 / 5]))))
        ok &= abs(bleu(cand, [ref]) - want_bleu) < 1e-9
        # clipping: a degenerate 7-word candidate scores 2/7 unigram
        # precision against a reference containing "the" twice
        from mviqa.tasks.captions import modified_precision

        ok &= abs(
            modified_precision("the the the the the the the",
                               ["the cat is on the mat"], 1) - 2 / 7
        ) < 1e-9
        # consensus-weighted caption score: identical texts hit the maximum
        stats = CorpusStats.from_captions([cand, ref, "a dog ran home quickly today"])
        ok &= abs(cider(ref, [ref], stats) - 10.0) < 1e-9
        verdict(
            "scorer oracles: mask/box overlap by pixel count, four-option "
            "similarity by direct formula, retrieval by enumeration, and both "
            "caption scores against hand-worked examples",
            ok,
        )


class TestCorrelationOracles:
    def test_against_reference_implementations(self):
        import test_stats as ts

        ok = True
        rng = np.random.default_rng(99)
        for trial in range(50):
            n = int(rng.integers(8, 60))
            x = np.round(rng.normal(size=n), 1)  # rounding forces ties
            y = np.round(x * 0.7 + rng.normal(size=n), 1)
            if np.std(x) == 0 or np.std(y) == 0:
                continue
            ok &= abs(srcc(x, y) - ts.oracle_srcc(x, y)) < 1e-12
            ok &= abs(krcc(x, y) - ts.oracle_krcc(x, y)) < 1e-12
            ok &= abs(plcc(x, y) - ts.oracle_pearson(x, y)) < 1e-12
        # hand case: one swap in five items
        x = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
        y = np.array([1.0, 2.0, 4.0, 3.0, 5.0])
        ok &= abs(srcc(x, y) - 0.9) < 1e-12
        ok &= abs(krcc(x, y) - 0.8) < 1e-12
        ok &= abs(pearson(x, y) - 0.9) < 1e-12
        verdict(
            "correlation oracles: rank and linear coefficients match "
            "independent reimplementations on 50 tied vectors at 1e-12",
            ok,
        )


class TestShapeAnchors:
    def test_canonical_dataset_arithmetic(self):
        sched_hash = ParamSchedule.default().content_hash
        pair_ids = [
            f"r{i:04d}__{k.value}" for i in range(1000) for k in CorruptionKind
        ]
        ok = len(pair_ids) == 30000
        sp = split_train_val(pair_ids, seed=1)
        ok &= len(sp.train) == 24000 and len(sp.val) == 6000
        ok &= not ({ref_of(p) for p in sp.train} & {ref_of(p) for p in sp.val})
        ok &= ANNOTATIONS_PER_PAIR == 75
        ok &= expected_annotations(30000) == 2_250_000
        verdict(
            "shape anchors: 1000 references -> 30000 pairs, grouped 24000/6000 "
            "split, 75 annotations per pair -> 2.25M total",
            ok,
        )


class TestMildSevereFixture:
    def test_threshold_reproduces_published_labels(self):
        means = {}
        labels = {}
        with open(DATA / "cell_means.tsv") as f:
            for row in csv.reader(
                (l for l in f if not l.startswith("#")), delimiter="\t"
            ):
                kind, level, mean, label = row
                means[(kind, int(level))] = float(mean)
                labels[(kind, int(level))] = label
        got = classify_cells(means)
        mismatches = [c for c in labels if got[c] != labels[c]]
        verdict(
            f"mild/severe threshold: classifying all 150 (kind, level) cell "
            f"means at {MILD_SEVERE_THRESHOLD} reproduces every published label",
            len(labels) == 150 and not mismatches,
        )


class TestEndToEnd:
    def test_mock_pipeline(self, tmp_path):
        t0 = time.monotonic()
        summary, table, sched = run_pipeline(tmp_path, 20, sensitivity=0.8)
        params = fit_normalization(table)
        recs = compute_mos(table, params)
        mos = {r.pair_id: r.mos for r in recs}
        in_range = all(0.0 < m < 5.0 for m in mos.values())
        severity = {
            p.pair_id: sched.severity_of(CorruptionSpec(p.kind, p.level, 0))
            for p in summary.pairs
        }
        aligned = sorted(mos)
        rho = srcc(np.array([mos[p] for p in aligned]),
                   np.array([-severity[p] for p in aligned]))

        # a error-free panel must sit at the top of the fitted scale
        zero_dir = tmp_path / "zero"
        zero_dir.mkdir()
        _, zero_table, _ = run_pipeline(zero_dir, 3, sensitivity=0.0)
        zero_recs = compute_mos(zero_table, params)
        at_max = all(
            v == pytest.approx(1.0) for r in zero_recs for v in r.dims.values()
        )
        elapsed = time.monotonic() - t0
        verdict(
            f"end-to-end mock study: 600 pairs scored; MOS in (0,5); "
            f"SRCC(MOS, -severity) = {rho:.3f} (> 0.9); an error-free panel "
            f"lands at the top of the fitted scale; {elapsed:.0f}s (< 300s)",
            in_range and rho > 0.9 and at_max and elapsed < 300,
        )


class TestMosMonotonicity:
    def test_single_score_improvement_never_lowers_mos(self, rng):
        from test_aggregate import TASKS_BY_DIM, full_table

        table = full_table([f"m{i}__X" for i in range(6)], rng)
        params = fit_normalization(table)
        base = {r.pair_id: r.mos for r in compute_mos(table, params)}
        violations = 0
        for _ in range(1000):
            i = int(rng.integers(len(table.records)))
            rec = table.records[i]
            delta = float(rng.uniform(0.01, 1.0))
            if rec.orientation is Orientation.DEGRADATION:
                value = max(rec.value - delta, 0.0)
            else:
                value = rec.value + delta
            mutated = SubjectScoreTable(records=list(table.records))
            mutated.records[i] = ScoreRecord(
                rec.pair_id, rec.subject_id, rec.task, value, rec.orientation)
            new = compute_mos(mutated, params)
            if any(r.pair_id == rec.pair_id and r.mos < base[rec.pair_id] - 1e-12
                   for r in new):
                violations += 1
        # every task's normalized score spans exactly [0, 1] on the fitting
        # set, so every pooled dimension lives in [0, 1]
        from mviqa.aggregate.mos import oriented_value

        spans_ok = True
        for task, (lo, hi) in params.bounds.items():
            vals = [(oriented_value(r) - lo) / (hi - lo)
                    for r in table.records if r.task.value == task]
            spans_ok &= min(vals) == 0.0 and max(vals) == 1.0
        dims_ok = all(
            0.0 <= v <= 1.0 for r in compute_mos(table, params) for v in r.dims.values()
        )
        verdict(
            f"opinion-score monotonicity: {violations} violations in 1000 "
            f"single-response improvements; normalized scores span [0, 1] "
            f"per task and every pooled dimension stays in [0, 1]",
            violations == 0 and spans_ok and dims_ok,
        )


class TestMetricEvaluationSanity:
    def test_perfect_and_permuted_predictors(self):
        rng = np.random.default_rng(1234)
        mos = {f"p{i:05d}__{k.value}": float(rng.uniform(0.2, 4.8))
               for i in range(200) for k in CorruptionKind}
        assert len(mos) == 6000
        perfect = evaluate_metric(dict(mos), mos)
        perfect_ok = all(
            r.srcc == pytest.approx(1.0) and r.plcc == pytest.approx(1.0)
            and r.krcc == pytest.approx(1.0)
            for r in perfect
        )
        values = np.array([mos[k] for k in sorted(mos)])
        shuffled = values[rng.permutation(len(values))]
        permuted = dict(zip(sorted(mos), shuffled.tolist()))
        chance = evaluate_metric(permuted, mos)
        chance_ok = all(abs(r.srcc) < 0.05 for r in chance)
        verdict(
            "metric evaluation sanity: echoing the opinion scores gives "
            "correlation 1.0; a permuted predictor stays within |SRCC| < 0.05 "
            "at n = 6000",
            perfect_ok and chance_ok,
        )
