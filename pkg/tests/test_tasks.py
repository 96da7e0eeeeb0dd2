"""Task scorers against brute-force oracles and worked examples."""
import math

import numpy as np
import pytest

from mviqa.tasks.captions import CorpusStats, bleu, cider, modified_precision
from mviqa.tasks.embed import EmbedderError, HashingEmbedder
from mviqa.tasks.scoring import (
    box_iou,
    mask_iou,
    score_det,
    score_mcq,
    score_ret,
    score_seg,
    score_vqa,
    score_yon,
    softmax,
)
from mviqa.tasks.text import normalize_text, tokenize
from mviqa.tasks.types import (
    BoundingBox,
    Detection,
    DetectionSet,
    LogitPair,
    LogitQuad,
    Orientation,
    RetrievalRanking,
    SegMask,
    Task,
)


class TestYoN:
    def test_identical_logits_score_zero(self):
        s = score_yon(LogitPair(2.0, -1.0), LogitPair(2.0, -1.0))
        assert s.value == 0.0
        assert s.orientation is Orientation.DEGRADATION

    def test_flip_to_opposite_extreme(self):
        s = score_yon(LogitPair(10.0, -10.0), LogitPair(-10.0, 10.0))
        assert s.value == pytest.approx(1.0, abs=1e-8)

    def test_is_absolute_difference_of_yes_probability(self):
        ref, dis = LogitPair(1.0, 0.5), LogitPair(-0.3, 0.9)
        p = lambda lp: math.exp(lp.yes) / (math.exp(lp.yes) + math.exp(lp.no))
        assert score_yon(ref, dis).value == pytest.approx(abs(p(ref) - p(dis)), abs=1e-12)


class TestMCQ:
    def test_identical_is_one(self):
        q = LogitQuad(0.3, -0.2, 1.1, 0.0)
        assert score_mcq(q, q).value == pytest.approx(1.0, abs=1e-12)

    def test_cosine_of_softmaxed_quads_direct_formula(self, rng):
        for _ in range(50):
            a = LogitQuad(*rng.normal(size=4))
            b = LogitQuad(*rng.normal(size=4))
            pa, pb = softmax(a.as_array()), softmax(b.as_array())
            want = float(pa @ pb / (np.linalg.norm(pa) * np.linalg.norm(pb)))
            assert score_mcq(a, b).value == pytest.approx(want, abs=1e-12)

    def test_worked_example(self):
        # one-hot vs adjacent one-hot at extreme logits -> orthogonal
        a = LogitQuad(50.0, 0.0, 0.0, 0.0)
        b = LogitQuad(0.0, 50.0, 0.0, 0.0)
        assert score_mcq(a, b).value == pytest.approx(0.0, abs=1e-12)
        # equal two-way split against one-hot: cos = 1/sqrt(2)
        c = LogitQuad(50.0, 50.0, 0.0, 0.0)
        assert score_mcq(a, c).value == pytest.approx(1 / math.sqrt(2), abs=1e-9)


class TestVQA:
    def test_same_text_scores_one(self):
        e = HashingEmbedder()
        assert score_vqa("a red car", "a red car", e).value == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_text_scores_near_zero(self):
        e = HashingEmbedder()
        s = score_vqa("aaaa bbbb", "zzzz qqqq", e)
        assert abs(s.value) < 0.2

    def test_empty_text_rejected(self):
        with pytest.raises(EmbedderError):
            HashingEmbedder().embed("   ")


class TestMaskIoU:
    def test_matches_pixel_count_oracle(self, rng):
        for _ in range(100):
            a = SegMask(rng.uniform(size=(13, 17)) < 0.4)
            b = SegMask(rng.uniform(size=(13, 17)) < 0.4)
            inter = int(np.sum(a.bits & b.bits))
            union = int(np.sum(a.bits | b.bits))
            want = 1.0 if union == 0 else inter / union
            assert mask_iou(a, b) == want

    def test_both_empty_is_one(self):
        empty = SegMask(np.zeros((4, 4), dtype=bool))
        assert mask_iou(empty, empty) == 1.0
        assert score_seg(empty, empty).value == 1.0

    def test_quarter_overlap_example(self):
        a = np.zeros((10, 10), dtype=bool)
        b = np.zeros((10, 10), dtype=bool)
        a[0:5, 0:10] = True  # 50 px
        b[0:10, 0:5] = True  # 50 px, overlap 25
        assert mask_iou(SegMask(a), SegMask(b)) == pytest.approx(25 / 75)


class TestDET:
    def box(self, x0, y0, x1, y1):
        return BoundingBox(x0, y0, x1, y1)

    def test_box_iou_worked_example(self):
        a = self.box(0, 0, 10, 10)
        b = self.box(5, 5, 15, 15)
        assert box_iou(a, b) == pytest.approx(25 / 175)

    def test_category_gate(self):
        a = DetectionSet((Detection(1, 0.9, self.box(0, 0, 10, 10)),))
        b = DetectionSet((Detection(2, 0.9, self.box(0, 0, 10, 10)),))
        assert score_det(a, b).value == 0.0
        c = DetectionSet((Detection(1, 0.9, self.box(0, 0, 10, 10)),))
        assert score_det(a, c).value == pytest.approx(1.0)

    def test_top1_by_confidence(self):
        ref = DetectionSet((
            Detection(3, 0.9, self.box(0, 0, 10, 10)),
            Detection(1, 0.2, self.box(20, 20, 30, 30)),
        ))
        dis = DetectionSet((Detection(3, 0.8, self.box(0, 0, 10, 10)),))
        assert score_det(ref, dis).value == pytest.approx(1.0)

    def test_empty_dis_scores_zero_with_flag(self):
        ref = DetectionSet((Detection(1, 0.9, self.box(0, 0, 10, 10)),))
        s = score_det(ref, DetectionSet(()))
        assert s.value == 0.0
        assert "no-detection" in s.flags

    def test_empty_ref_rejected(self):
        from mviqa.imgcore.buffer import InvalidInputError

        dis = DetectionSet((Detection(1, 0.9, self.box(0, 0, 10, 10)),))
        with pytest.raises(InvalidInputError, match="no-ref-detection"):
            score_det(DetectionSet(()), dis)


class TestRET:
    def ranking(self, order):
        return RetrievalRanking(tuple(order))

    def oracle(self, ref, dis):
        # sum of top-1/5/10 hits of the reference's top anchor
        anchor = ref.labels[0]
        pos = dis.labels.index(anchor)
        return sum(1.0 for k in (1, 5, 10) if pos < k)

    def test_matches_positional_enumeration(self):
        base = list(range(10))
        for pos in range(10):
            order = base[:]
            order.remove(0)
            order.insert(pos, 0)
            ref = self.ranking(base)
            dis = self.ranking(order)
            assert score_ret(ref, dis).value == self.oracle(ref, dis)

    def test_anchor_positions_map_to_expected_scores(self):
        base = self.ranking(range(10))
        assert score_ret(base, base).value == 3.0
        moved = self.ranking([1, 2, 3, 0, 4, 5, 6, 7, 8, 9])
        assert score_ret(base, moved).value == 2.0
        buried = self.ranking([1, 2, 3, 4, 5, 6, 7, 8, 9, 0])
        assert score_ret(base, buried).value == 1.0


class TestText:
    def test_normalize_strips_punct_and_case(self):
        assert normalize_text("The CAT, sat!") == "the cat sat"

    def test_tokenize(self):
        assert tokenize("A b  c") == ["a", "b", "c"]


class TestBleu:
    def test_worked_clipped_precision(self):
        # candidate with 7 unigrams, 2 clipped matches
        cand = "the the the the the the the"
        refs = ["the cat is on the mat"]
        assert modified_precision(cand, refs, 1) == pytest.approx(2 / 7, abs=1e-9)

    def test_self_match_is_one(self):
        text = "a quick brown fox jumps over the lazy dog"
        assert bleu(text, [text]) == pytest.approx(1.0, abs=1e-12)

    def test_short_candidate_penalized(self):
        ref = "a quick brown fox jumps over the lazy dog"
        assert bleu("a quick brown fox", [ref]) < 1.0

    def test_no_overlap_scores_zero_ish(self):
        assert bleu("xx yy zz", ["aa bb cc"]) < 1e-6


def hand_cider(cand, refs, corpus, sigma=6.0, max_n=4):
    """Straight transcription of the clipped TF-IDF cosine definition."""
    from collections import Counter

    def ngrams(tokens, n):
        return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))

    docs = [tokenize(c) for c in corpus]
    N = len(docs)
    cand_t, ref_ts = tokenize(cand), [tokenize(r) for r in refs]
    total = 0.0
    for n in range(1, max_n + 1):
        df = Counter()
        for d in docs:
            df.update(set(ngrams(d, n)))

        def vec(tokens):
            tf = ngrams(tokens, n)
            return {g: c * (math.log(N) - math.log(df.get(g, 0) or 1)) for g, c in tf.items()}

        vc = vec(cand_t)
        per_ref = 0.0
        for rt in ref_ts:
            vr = vec(rt)
            num = sum(min(vc.get(g, 0.0), vr.get(g, 0.0)) * vr[g] for g in vr)
            den = math.sqrt(sum(v * v for v in vc.values())) * math.sqrt(sum(v * v for v in vr.values()))
            sim = num / den if den > 0 else 0.0
            delta = len(cand_t) - len(rt)
            per_ref += sim * math.exp(-(delta ** 2) / (2 * sigma ** 2))
        total += per_ref / len(ref_ts)
    return 10.0 * total / max_n


class TestCider:
    CORPUS = [
        "a dog runs in the park",
        "a cat sleeps on the mat",
        "two birds fly over water",
        "a man rides a red bike",
    ]

    def test_matches_hand_computation(self):
        stats = CorpusStats.from_captions(self.CORPUS)
        cand = "a dog runs in the grass"
        refs = ["a dog runs in the park"]
        want = hand_cider(cand, refs, self.CORPUS)
        assert cider(cand, refs, stats) == pytest.approx(want, abs=1e-9)

    def test_self_match_is_ten(self):
        stats = CorpusStats.from_captions(self.CORPUS)
        text = self.CORPUS[0]
        assert cider(text, [text], stats) == pytest.approx(10.0, abs=1e-9)

    def test_zero_overlap_is_zero(self):
        stats = CorpusStats.from_captions(self.CORPUS)
        assert cider("xxxx yyyy zzzz", [self.CORPUS[1]], stats) == pytest.approx(0.0, abs=1e-12)


class TestEmbedder:
    def test_deterministic(self):
        e = HashingEmbedder()
        assert np.array_equal(e.embed("hello world"), e.embed("hello world"))

    def test_unit_norm(self):
        v = HashingEmbedder().embed("some text here")
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)

    def test_similar_texts_closer_than_dissimilar(self):
        e = HashingEmbedder()
        a, b, c = e.embed("a red car"), e.embed("a red card"), e.embed("wet blue sky")
        assert a @ b > a @ c
