"""Tokenization, case folding, punctuation handling and synonym lookup.

This is the shared front end every metric consumes. The tokenizer splits
on whitespace and then peels leading/trailing ASCII punctuation off each
chunk, one character per token, so punctuation marks are ordinary tokens
("fix bug." -> ["fix", "bug", "."]) while interior punctuation survives
("v1.2", "user_id"). Peeling char-by-char keeps tokenization stable under
re-tokenizing its own space-joined output.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Iterator

from cmgeval import porter

ASCII_PUNCTUATION = frozenset(string.punctuation)

_FOLD = str.maketrans(string.ascii_uppercase, string.ascii_lowercase)


def fold_case(text: str) -> str:
    """ASCII-only lower-casing; non-ASCII characters pass through."""
    return text.translate(_FOLD)


@dataclass(frozen=True)
class Token:
    """One token: the form metrics match on, its case-folded form, and a
    Porter stem. After ``preprocess(..., lowercase=True)`` the surface IS
    the folded form; ``tokenize`` keeps the surface exactly as read."""

    surface: str
    folded: str
    stem: str

    def is_punctuation(self) -> bool:
        return all(c in ASCII_PUNCTUATION for c in self.surface)


@dataclass(frozen=True)
class TokenSeq:
    """Ordered token sequence plus the string it came from."""

    tokens: tuple[Token, ...]
    source: str

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def __getitem__(self, i: int) -> Token:
        return self.tokens[i]

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(t.surface for t in self.tokens)

    @property
    def stems(self) -> tuple[str, ...]:
        return tuple(t.stem for t in self.tokens)

    @property
    def foldeds(self) -> tuple[str, ...]:
        return tuple(t.folded for t in self.tokens)


@dataclass(frozen=True)
class PrepConfig:
    """Preprocessing switches. Both flags are independent."""

    lowercase: bool = False
    strip_punctuation: bool = False


def _split_chunk(chunk: str) -> list[str]:
    lead: list[str] = []
    trail: list[str] = []
    while chunk and chunk[0] in ASCII_PUNCTUATION:
        lead.append(chunk[0])
        chunk = chunk[1:]
    while chunk and chunk[-1] in ASCII_PUNCTUATION:
        trail.append(chunk[-1])
        chunk = chunk[:-1]
    parts = lead
    if chunk:
        parts.append(chunk)
    parts.extend(reversed(trail))
    return parts


def _token(form: str) -> Token:
    folded = fold_case(form)
    return Token(surface=form, folded=folded, stem=porter.stem(folded))


def tokenize(text: str) -> TokenSeq:
    """Split into tokens; total and deterministic for any string."""
    forms: list[str] = []
    for chunk in text.split():
        forms.extend(_split_chunk(chunk))
    return TokenSeq(tokens=tuple(_token(f) for f in forms), source=text)


def preprocess(text: str, cfg: PrepConfig) -> TokenSeq:
    """Tokenize, then optionally fold case and drop all-punctuation tokens.

    Stems are recomputed from the resulting matching forms, so with
    lowercase off the stems are case-sensitive and a cased mismatch stays
    a mismatch for every matcher.
    """
    seq = tokenize(text)
    tokens = []
    for tok in seq.tokens:
        if cfg.strip_punctuation and tok.is_punctuation():
            continue
        form = tok.folded if cfg.lowercase else tok.surface
        tokens.append(Token(surface=form, folded=tok.folded, stem=porter.stem(form)))
    return TokenSeq(tokens=tuple(tokens), source=text)


class SynonymLexicon:
    """Word -> synset-id sets loaded from a plain synset file.

    Two words are synonyms iff their id sets intersect; every word is
    additionally its own synonym. Immutable after construction.
    """

    def __init__(self, synset_ids: dict[str, frozenset[int]] | None = None):
        self._ids: dict[str, frozenset[int]] = dict(synset_ids or {})

    def synset_ids(self, word: str) -> frozenset[int]:
        return self._ids.get(word, frozenset())

    def are_synonyms(self, a: str, b: str) -> bool:
        if a == b:
            return True
        return bool(self._ids.get(a, frozenset()) & self._ids.get(b, frozenset()))

    def __len__(self) -> int:
        return len(self._ids)

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "SynonymLexicon":
        ids: dict[str, set[int]] = {}
        for lineno, line in enumerate(lines):
            for word in line.split():
                ids.setdefault(word, set()).add(lineno)
        return cls({w: frozenset(s) for w, s in ids.items()})


EMPTY_LEXICON = SynonymLexicon()


def load_synonyms(path) -> SynonymLexicon:
    """Load a synset file: one synset per line, whitespace-separated
    lower-case words; the line number is the synset id. A missing file
    raises FileNotFoundError carrying the path; an empty file is a valid
    empty lexicon."""
    with open(path, encoding="utf-8") as fh:
        return SynonymLexicon.from_lines(fh.read().splitlines())
