"""Word-level edit distance and the shift-free TER score."""

from __future__ import annotations

from dataclasses import dataclass

from cmgeval import _kernels
from cmgeval.errors import InvalidReferenceError
from cmgeval.textprep import TokenSeq


@dataclass(frozen=True)
class EditSummary:
    """Operation counts of a minimal unit-cost script turning the
    prediction into the reference."""

    substitutions: int
    deletions: int
    insertions: int

    @property
    def total(self) -> int:
        return self.substitutions + self.deletions + self.insertions


def edit_summary(pred: TokenSeq, ref: TokenSeq) -> EditSummary:
    """Minimal word edit script; among minimal scripts the backtrace
    prefers substitution over deletion over insertion, so the split is
    deterministic."""
    pred_ids, ref_ids = _kernels.intern_ids(pred.surfaces, ref.surfaces)
    subs, dels, ins = _kernels.edit_counts(pred_ids, ref_ids)
    return EditSummary(substitutions=subs, deletions=dels, insertions=ins)


def ter(pred: TokenSeq, ref: TokenSeq) -> float:
    """Edit operations per reference word. Lower is better; values can
    exceed 1 and are deliberately not clamped."""
    if len(ref) == 0:
        raise InvalidReferenceError("reference must be non-empty")
    return edit_summary(pred, ref).total / len(ref)
