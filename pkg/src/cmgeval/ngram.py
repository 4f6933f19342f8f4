"""Sentence-level BLEU4 (plain, +1-smoothed, neighbor-averaged) and
ROUGE-1/2/L."""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field

from cmgeval import _kernels
from cmgeval.errors import InvalidReferenceError, UndefinedScoreError
from cmgeval.textprep import TokenSeq

MAX_ORDER = 4


class Smoothing(enum.Enum):
    NONE = "none"
    NORM = "norm"  # p_k = (m_k + 1) / (l_k + 1)
    CC = "cc"      # m_k averaged with the k-1 and k+1 match counts


@dataclass(frozen=True)
class BleuConfig:
    weights: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)
    smoothing: Smoothing = Smoothing.NONE
    use_brevity_penalty: bool = True
    # Whether neighbor averaging keeps the +1 smoothing underneath
    # (the shipped reading); False evaluates bare averaged counts.
    cc_plus_one: bool = True

    def __post_init__(self):
        if len(self.weights) != MAX_ORDER:
            raise ValueError("exactly four k-gram weights required")
        if any(w <= 0 for w in self.weights):
            raise ValueError("k-gram weights must be strictly positive")
        if abs(sum(self.weights) - 1.0) > 1e-9:
            raise ValueError("k-gram weights must sum to 1")


@dataclass
class NgramStats:
    """Clipped match and total counts per order 1..4, plus reference
    n-gram totals used by ROUGE."""

    matched: list[int] = field(default_factory=lambda: [0] * MAX_ORDER)
    total: list[int] = field(default_factory=lambda: [0] * MAX_ORDER)
    ref_total: list[int] = field(default_factory=lambda: [0] * MAX_ORDER)


def _ngrams(forms: tuple[str, ...], k: int) -> Counter:
    return Counter(tuple(forms[i : i + k]) for i in range(len(forms) - k + 1))


def clipped_matches(pred: TokenSeq, ref: TokenSeq, k: int) -> tuple[int, int]:
    """(m_k, l_k): clipped k-gram matches and the number of prediction
    k-grams. (0, 0) when the prediction is shorter than k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    l_k = max(0, len(pred) - k + 1)
    if l_k == 0:
        return 0, 0
    pred_counts = _ngrams(pred.surfaces, k)
    ref_counts = _ngrams(ref.surfaces, k)
    m_k = sum(min(c, ref_counts[g]) for g, c in pred_counts.items())
    return m_k, l_k


def ngram_stats(pred: TokenSeq, ref: TokenSeq) -> NgramStats:
    stats = NgramStats()
    for k in range(1, MAX_ORDER + 1):
        m, l = clipped_matches(pred, ref, k)
        stats.matched[k - 1] = m
        stats.total[k - 1] = l
        stats.ref_total[k - 1] = max(0, len(ref) - k + 1)
    return stats


def brevity_penalty(pred_len: int, ref_len: int) -> float:
    """Standard BLEU brevity penalty; 0 for an empty prediction."""
    if ref_len < 1:
        raise InvalidReferenceError("reference must be non-empty")
    if pred_len == 0:
        return 0.0
    if pred_len >= ref_len:
        return 1.0
    return math.exp(1.0 - ref_len / pred_len)


def _cc_counts(matched: list[int], total: list[int]) -> list[float]:
    # Boundary convention: m_0 = m_1 + 1, m_5 = m_4. Averaged counts are
    # clamped into [0, l_k] so precisions cannot leave [0, 1].
    extended = [matched[0] + 1] + list(matched) + [matched[-1]]
    smoothed = []
    for k in range(1, MAX_ORDER + 1):
        avg = (extended[k - 1] + extended[k] + extended[k + 1]) / 3.0
        smoothed.append(min(avg, float(total[k - 1])))
    return smoothed


def bleu4(pred: TokenSeq, ref: TokenSeq, cfg: BleuConfig | None = None) -> float:
    """Geometric mean of k-gram precisions up to order 4, optionally
    brevity-penalized. Unsmoothed BLEU is 0 whenever any order has no
    match; the smoothed variants stay positive for non-empty predictions.
    """
    cfg = cfg or BleuConfig()
    if len(ref) == 0:
        raise InvalidReferenceError("reference must be non-empty")
    if len(pred) == 0:
        return 0.0
    stats = ngram_stats(pred, ref)

    precisions: list[float] = []
    if cfg.smoothing is Smoothing.NONE:
        for m, l in zip(stats.matched, stats.total):
            if l == 0 or m == 0:
                return 0.0
            precisions.append(m / l)
    elif cfg.smoothing is Smoothing.NORM:
        for m, l in zip(stats.matched, stats.total):
            precisions.append((m + 1.0) / (l + 1.0))
    else:
        smoothed = _cc_counts(stats.matched, stats.total)
        if cfg.cc_plus_one:
            for m, l in zip(smoothed, stats.total):
                precisions.append((m + 1.0) / (l + 1.0))
        else:
            for m, l in zip(smoothed, stats.total):
                if l == 0 or m == 0:
                    return 0.0
                precisions.append(m / l)

    score = math.exp(sum(w * math.log(p) for w, p in zip(cfg.weights, precisions)))
    if cfg.use_brevity_penalty:
        score *= brevity_penalty(len(pred), len(ref))
    return min(score, 1.0)


def rouge_n(pred: TokenSeq, ref: TokenSeq, n: int) -> float:
    """Recall-oriented n-gram overlap: clipped matches over reference
    n-gram count."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(ref) == 0:
        raise InvalidReferenceError("reference must be non-empty")
    ref_total = len(ref) - n + 1
    if ref_total < 1:
        raise UndefinedScoreError(
            f"reference has no {n}-grams (length {len(ref)})"
        )
    if len(pred) < n:
        return 0.0
    pred_counts = _ngrams(pred.surfaces, n)
    ref_counts = _ngrams(ref.surfaces, n)
    matched = sum(min(c, pred_counts[g]) for g, c in ref_counts.items())
    return matched / ref_total


def rouge_l(pred: TokenSeq, ref: TokenSeq, f_beta: float | None = None) -> float:
    """LCS overlap. Default is the recall form LCS/|ref|; passing
    ``f_beta`` switches to the F-measure variant."""
    if len(ref) == 0:
        raise InvalidReferenceError("reference must be non-empty")
    if len(pred) == 0:
        return 0.0
    pred_ids, ref_ids = _kernels.intern_ids(pred.surfaces, ref.surfaces)
    lcs = _kernels.lcs_length(pred_ids, ref_ids)
    recall = lcs / len(ref)
    if f_beta is None:
        return recall
    if lcs == 0:
        return 0.0
    precision = lcs / len(pred)
    b2 = f_beta * f_beta
    return (1 + b2) * precision * recall / (recall + b2 * precision)
