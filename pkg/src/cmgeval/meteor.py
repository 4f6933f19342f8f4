"""Unigram-alignment metrics: METEOR, its hyper-parametrized variant, and
the log-identity variant that waives the fragmentation penalty for
identical pairs and preprocesses more aggressively.

Pipeline: candidate matching (exact / stem / synonym, highest priority
kept per token pair) -> one-to-one alignment maximizing match count and,
among maximal alignments, minimizing chunk count -> weighted
precision/recall/F -> fragmentation penalty -> final score.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Union

from cmgeval.errors import ValidationError
from cmgeval.textprep import (
    EMPTY_LEXICON,
    PrepConfig,
    SynonymLexicon,
    TokenSeq,
    preprocess,
)

# Published default preprocessing: the classic implementation lower-cases;
# punctuation removal is what the log-identity variant adds on top.
METEOR_PREP = PrepConfig(lowercase=True, strip_punctuation=False)
LOG_MNEXT_PREP = PrepConfig(lowercase=True, strip_punctuation=True)

# Exact alignment search is abandoned for a deterministic greedy pass on
# inputs this large (candidate-bearing prediction tokens / DFS nodes).
EXACT_SEARCH_TOKEN_LIMIT = 30
EXACT_SEARCH_NODE_BUDGET = 2_000_000


class MatcherType(enum.IntEnum):
    # Order is priority: a pair matched by several matchers keeps the best.
    EXACT = 0
    STEM = 1
    SYNONYM = 2


class FragMode(enum.Enum):
    METEOR_CLASSIC = "classic"
    LOG_MNEXT = "log_mnext"


@dataclass(frozen=True)
class MeteorParams:
    """All knobs of the metric family.

    alpha weighs precision against recall in the F-score; beta scales and
    gamma shapes the fragmentation penalty; one weight per matcher type.
    """

    alpha: float = 0.9
    beta: float = 0.5
    gamma: float = 3.0
    w_exact: float = 1.0
    w_stem: float = 1.0
    w_syn: float = 1.0
    matchers_enabled: frozenset[MatcherType] = frozenset(MatcherType)
    frag_mode: FragMode = FragMode.METEOR_CLASSIC

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValidationError("alpha must lie strictly between 0 and 1")
        if self.beta < 0 or self.gamma < 0:
            raise ValidationError("beta and gamma must be non-negative")
        for w in (self.w_exact, self.w_stem, self.w_syn):
            if not 0.0 <= w <= 1.0:
                raise ValidationError("matcher weights must lie in [0, 1]")
        if MatcherType.EXACT not in self.matchers_enabled:
            raise ValidationError("the exact matcher cannot be disabled")

    def weight(self, m: MatcherType) -> float:
        return (self.w_exact, self.w_stem, self.w_syn)[m]


def classic_params() -> MeteorParams:
    return MeteorParams(frag_mode=FragMode.METEOR_CLASSIC)


def next_params() -> MeteorParams:
    # Same shipping defaults; the point of the variant is that every knob
    # is tunable (e.g. via a --params file).
    return MeteorParams(frag_mode=FragMode.METEOR_CLASSIC)


def log_mnext_params() -> MeteorParams:
    return MeteorParams(frag_mode=FragMode.LOG_MNEXT)


_PARAM_KEYS = ("alpha", "beta", "gamma", "w_exact", "w_stem", "w_syn", "frag_mode")


def load_params(path, base: MeteorParams | None = None) -> MeteorParams:
    """Read a plain key-value parameter file (``key = value`` lines,
    ``#`` comments). Unknown keys are rejected."""
    params = base or next_params()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValidationError(f"{path}: line {lineno}: expected key = value")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _PARAM_KEYS:
                raise ValidationError(f"{path}: line {lineno}: unknown key {key!r}")
            if key == "frag_mode":
                try:
                    params = replace(params, frag_mode=FragMode(value))
                except ValueError:
                    raise ValidationError(
                        f"{path}: line {lineno}: frag_mode must be one of "
                        f"{[m.value for m in FragMode]}"
                    ) from None
            else:
                try:
                    params = replace(params, **{key: float(value)})
                except ValueError:
                    raise ValidationError(
                        f"{path}: line {lineno}: {key} must be a number"
                    ) from None
    return params


Match = tuple[int, int, MatcherType]


@dataclass(frozen=True)
class MatchSet:
    """Candidate (pred_index, ref_index, matcher) triples; one entry per
    index pair, carrying its highest-priority matcher."""

    candidates: tuple[Match, ...]


@dataclass(frozen=True)
class Alignment:
    """A one-to-one selection of candidate matches plus its chunk count
    (maximal runs contiguous and equally ordered on both sides)."""

    matches: tuple[Match, ...]
    chunk_count: int

    @property
    def match_count(self) -> int:
        return len(self.matches)


def match_unigrams(
    pred: TokenSeq,
    ref: TokenSeq,
    params: MeteorParams | None = None,
    lexicon: SynonymLexicon | None = None,
) -> MatchSet:
    """All candidate unigram matches between prediction and reference."""
    params = params or classic_params()
    lexicon = lexicon if lexicon is not None else EMPTY_LEXICON
    stem_on = MatcherType.STEM in params.matchers_enabled
    syn_on = MatcherType.SYNONYM in params.matchers_enabled
    out: list[Match] = []
    for i, p in enumerate(pred.tokens):
        for j, r in enumerate(ref.tokens):
            if p.surface == r.surface:
                out.append((i, j, MatcherType.EXACT))
            elif stem_on and p.stem == r.stem:
                out.append((i, j, MatcherType.STEM))
            elif syn_on and lexicon.are_synonyms(p.folded, r.folded):
                out.append((i, j, MatcherType.SYNONYM))
    return MatchSet(candidates=tuple(out))


def _max_cardinality(cand_by_pred: dict[int, list[Match]], ref_len: int) -> int:
    # Kuhn's augmenting paths; deterministic given the candidate order.
    match_of_ref: dict[int, int] = {}

    def try_augment(i: int, visited: set[int]) -> bool:
        for _, j, _t in cand_by_pred[i]:
            if j in visited:
                continue
            visited.add(j)
            if j not in match_of_ref or try_augment(match_of_ref[j], visited):
                match_of_ref[j] = i
                return True
        return False

    for i in sorted(cand_by_pred):
        try_augment(i, set())
    return len(match_of_ref)


class _Budget:
    __slots__ = ("nodes",)

    def __init__(self, nodes: int):
        self.nodes = nodes


class _BudgetExceeded(Exception):
    pass


def _search_exact(
    order: list[int],
    cand_by_pred: dict[int, list[Match]],
    target: int,
    budget: _Budget,
) -> tuple[Match, ...]:
    """Lexicographic DFS over max-cardinality alignments, keeping the first
    one attaining the minimal chunk count. Prunes branches that cannot
    reach the target cardinality or strictly fewer chunks."""
    best: list[tuple[Match, ...] | None] = [None]
    best_chunks = [len(order) + 1]
    # remaining[k] = candidate-bearing pred indices at position >= k
    remaining = list(range(len(order), -1, -1))
    used: set[int] = set()
    chosen: list[Match] = []

    def dfs(pos: int, matched: int, chunks: int, last: tuple[int, int] | None):
        budget.nodes -= 1
        if budget.nodes < 0:
            raise _BudgetExceeded
        if chunks >= best_chunks[0]:
            return
        if matched + remaining[pos] < target:
            return
        if pos == len(order):
            if matched == target and chunks < best_chunks[0]:
                best[0] = tuple(chosen)
                best_chunks[0] = chunks
            return
        i = order[pos]
        for cand in cand_by_pred[i]:
            j = cand[1]
            if j in used:
                continue
            used.add(j)
            chosen.append(cand)
            extends = last is not None and last == (i - 1, j - 1)
            dfs(pos + 1, matched + 1, chunks if extends else chunks + 1, (i, j))
            chosen.pop()
            used.remove(j)
        dfs(pos + 1, matched, chunks, last)

    dfs(0, 0, 0, None)
    assert best[0] is not None
    return best[0]


def _search_greedy(
    order: list[int], cand_by_pred: dict[int, list[Match]]
) -> tuple[Match, ...]:
    """Stage-wise greedy: exact matches first, then stems, then synonyms;
    within a stage, leftmost prediction token takes the ref position that
    continues the previous run when possible, else the leftmost free one."""
    used_ref: set[int] = set()
    match_at: dict[int, Match] = {}
    for mtype in MatcherType:
        for i in order:
            if i in match_at:
                continue
            options = [c for c in cand_by_pred[i] if c[2] == mtype and c[1] not in used_ref]
            if not options:
                continue
            prev = match_at.get(i - 1)
            pick = next((c for c in options if prev and c[1] == prev[1] + 1), options[0])
            match_at[i] = pick
            used_ref.add(pick[1])
    return tuple(match_at[i] for i in sorted(match_at))


def count_chunks(matches: tuple[Match, ...]) -> int:
    """Chunks of a match list sorted by prediction index."""
    chunks = 0
    prev: tuple[int, int] | None = None
    for i, j, _t in matches:
        if prev is None or prev != (i - 1, j - 1):
            chunks += 1
        prev = (i, j)
    return chunks


def align(ms: MatchSet, pred_len: int, ref_len: int) -> Alignment:
    """Select a one-to-one alignment of maximal match count; ties resolved
    toward the fewest chunks, then lexicographically."""
    cand_by_pred: dict[int, list[Match]] = {}
    for cand in ms.candidates:
        cand_by_pred.setdefault(cand[0], []).append(cand)
    for cands in cand_by_pred.values():
        cands.sort(key=lambda c: (c[1], c[2]))
    order = sorted(cand_by_pred)
    if not order:
        return Alignment(matches=(), chunk_count=0)

    matches: tuple[Match, ...]
    if len(order) > EXACT_SEARCH_TOKEN_LIMIT:
        matches = _search_greedy(order, cand_by_pred)
    else:
        target = _max_cardinality(cand_by_pred, ref_len)
        try:
            matches = _search_exact(
                order, cand_by_pred, target, _Budget(EXACT_SEARCH_NODE_BUDGET)
            )
        except _BudgetExceeded:
            matches = _search_greedy(order, cand_by_pred)
    return Alignment(matches=matches, chunk_count=count_chunks(matches))


@dataclass(frozen=True)
class PRF:
    """Weighted precision/recall/F plus the quantities they came from."""

    precision: float
    recall: float
    f_score: float
    weighted_matches: float
    pred_len: int
    ref_len: int


def precision_recall_f(
    a: Alignment, params: MeteorParams, pred_len: int, ref_len: int
) -> PRF:
    if pred_len < 1 or ref_len < 1:
        raise ValidationError("precision/recall need non-empty sides")
    weighted = sum(params.weight(t) for _i, _j, t in a.matches)
    p = weighted / pred_len
    r = weighted / ref_len
    if p == 0.0 and r == 0.0:
        f = 0.0
    else:
        f = p * r / (params.alpha * p + (1.0 - params.alpha) * r)
    return PRF(
        precision=p,
        recall=r,
        f_score=f,
        weighted_matches=weighted,
        pred_len=pred_len,
        ref_len=ref_len,
    )


def frag_penalty(a: Alignment, params: MeteorParams, identical: bool) -> float:
    """beta * (chunks / matched)^gamma, waived entirely for identical
    pairs in LOG_MNEXT mode; 0 when nothing matched. Clamped at 1 so
    off-default parameters cannot drive scores negative."""
    if a.match_count == 0:
        return 0.0
    if params.frag_mode is FragMode.LOG_MNEXT and identical:
        return 0.0
    penalty = params.beta * (a.chunk_count / a.match_count) ** params.gamma
    return min(penalty, 1.0)


@dataclass(frozen=True)
class MeteorResult:
    """Score plus the pipeline internals, for reporting and ablation."""

    score: float
    precision: float
    recall: float
    f_score: float
    penalty: float
    match_count: int
    chunk_count: int
    degenerate: bool = False


_ZERO_RESULT = MeteorResult(0.0, 0.0, 0.0, 0.0, 0.0, 0, 0, degenerate=True)


def score_pair(
    pred: TokenSeq,
    ref: TokenSeq,
    params: MeteorParams,
    lexicon: SynonymLexicon | None = None,
    *,
    force_single_chunk: bool = False,
    drop_penalty: bool = False,
) -> MeteorResult:
    """Full pipeline on preprocessed sequences. ``force_single_chunk``
    scores with word order ignored (every alignment counts as one chunk);
    ``drop_penalty`` zeroes the fragmentation penalty outright."""
    if len(pred) == 0 or len(ref) == 0:
        return _ZERO_RESULT
    ms = match_unigrams(pred, ref, params, lexicon)
    a = align(ms, len(pred), len(ref))
    if force_single_chunk and a.match_count > 0:
        a = Alignment(matches=a.matches, chunk_count=1)
    prf = precision_recall_f(a, params, len(pred), len(ref))
    identical = pred.surfaces == ref.surfaces
    penalty = 0.0 if drop_penalty else frag_penalty(a, params, identical)
    return MeteorResult(
        score=prf.f_score * (1.0 - penalty),
        precision=prf.precision,
        recall=prf.recall,
        f_score=prf.f_score,
        penalty=penalty,
        match_count=a.match_count,
        chunk_count=a.chunk_count,
    )


TextOrTokens = Union[str, TokenSeq]


def _as_seq(text: TextOrTokens, prep: PrepConfig) -> TokenSeq:
    if isinstance(text, TokenSeq):
        return text
    return preprocess(text, prep)


def meteor(
    pred: TextOrTokens,
    ref: TextOrTokens,
    lexicon: SynonymLexicon | None = None,
    params: MeteorParams | None = None,
) -> float:
    """Classic preset. Raw strings get the family's default preprocessing
    (lower-casing only)."""
    params = params or classic_params()
    return score_pair(
        _as_seq(pred, METEOR_PREP), _as_seq(ref, METEOR_PREP), params, lexicon
    ).score


def meteor_next(
    pred: TextOrTokens,
    ref: TextOrTokens,
    lexicon: SynonymLexicon | None = None,
    params: MeteorParams | None = None,
) -> float:
    """Tunable preset; identical pipeline, parameters supplied by the
    caller (defaults match the classic preset)."""
    params = params or next_params()
    return score_pair(
        _as_seq(pred, METEOR_PREP), _as_seq(ref, METEOR_PREP), params, lexicon
    ).score


def log_mnext(
    pred: str,
    ref: str,
    lexicon: SynonymLexicon | None = None,
    params: MeteorParams | None = None,
) -> float:
    """Identity-aware variant: lower-cases and strips punctuation before
    matching, and scores exactly 1 for pairs identical after that
    preprocessing."""
    params = params or log_mnext_params()
    if params.frag_mode is not FragMode.LOG_MNEXT:
        params = replace(params, frag_mode=FragMode.LOG_MNEXT)
    pred_seq = _as_seq(pred, LOG_MNEXT_PREP)
    ref_seq = _as_seq(ref, LOG_MNEXT_PREP)
    return score_pair(pred_seq, ref_seq, params, lexicon).score
