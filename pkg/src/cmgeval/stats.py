"""Rank statistics and score aggregation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from cmgeval.errors import UndefinedCorrelationError, ValidationError


@dataclass(frozen=True)
class CorrelationResult:
    rho: float
    n: int
    ties_present: bool


def rank(values: Sequence[float]) -> list[float]:
    """Fractional ranks 1..n; ties share the mean of the positions they
    occupy."""
    if not values:
        raise ValueError("cannot rank an empty list")
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mean_rank = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return ranks


def _pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxy = sxx = syy = 0.0
    for x, y in zip(xs, ys):
        dx = x - mx
        dy = y - my
        sxy += dx * dy
        sxx += dx * dx
        syy += dy * dy
    return sxy / math.sqrt(sxx * syy)


def spearman(xs: Sequence[float], ys: Sequence[float]) -> CorrelationResult:
    """Tie-correct Spearman's rho: Pearson correlation of the fractional
    rank vectors. Reduces to 1 - 6*sum(d^2)/(n(n^2-1)) when no ties."""
    if len(xs) != len(ys):
        raise ValueError("input vectors must have equal length")
    if len(xs) < 3:
        raise UndefinedCorrelationError("need at least 3 samples")
    if min(xs) == max(xs) or min(ys) == max(ys):
        raise UndefinedCorrelationError("constant vector has no rank order")
    rx = rank(xs)
    ry = rank(ys)
    ties = len(set(xs)) < len(xs) or len(set(ys)) < len(ys)
    return CorrelationResult(rho=_pearson(rx, ry), n=len(xs), ties_present=ties)


def average_human(scores: Sequence[int]) -> float:
    """Arithmetic mean of per-annotator integer scores in 0..4."""
    if not scores:
        raise ValidationError("at least one annotator score required")
    for s in scores:
        if not isinstance(s, int) or isinstance(s, bool) or not 0 <= s <= 4:
            raise ValidationError(f"annotator score {s!r} outside 0..4")
    return sum(scores) / len(scores)


def corpus_mean(scores: Sequence[float]) -> float:
    """Mean of per-pair scores, reported as a percentage."""
    if not scores:
        raise ValueError("cannot average an empty score list")
    return 100.0 * sum(scores) / len(scores)
