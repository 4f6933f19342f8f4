"""Line-delimited JSON corpora (pairs, annotations, commits) and
deterministic report rendering.

Every record is one JSON object per line. Validation failures always name
the offending line number or record id. Report output is byte-stable:
fixed column order, correlations and per-pair scores to 4 decimals,
percentage means to 2.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from io import StringIO
from typing import Iterable, Sequence

from cmgeval.errors import ValidationError
from cmgeval.stats import average_human

logger = logging.getLogger("cmgeval")

LANG_TAGS = ("cpp", "csharp", "java", "javascript", "python", "other")


@dataclass(frozen=True)
class EvalPair:
    id: str
    reference: str
    prediction: str


@dataclass(frozen=True)
class AnnotatedPair:
    id: str
    reference: str
    prediction: str
    annotator_scores: tuple[int, ...]
    mean_score: float


@dataclass(frozen=True)
class CommitRecord:
    id: str
    diff: str
    message: str
    lang: str


def _parse_line(path, lineno: int, line: str) -> dict:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: line {lineno}: malformed JSON ({exc.msg})")
    if not isinstance(obj, dict):
        raise ValidationError(f"{path}: line {lineno}: expected a JSON object")
    return obj


def _string_field(path, lineno: int, obj: dict, name: str) -> str:
    if name not in obj:
        raise ValidationError(f"{path}: line {lineno}: missing field {name!r}")
    value = obj[name]
    if not isinstance(value, str):
        raise ValidationError(f"{path}: line {lineno}: field {name!r} must be a string")
    return value


def _iter_records(path):
    with open(path, encoding="utf-8") as fh:
        lineno = 0
        seen_any = False
        for raw in fh:
            lineno += 1
            if not raw.strip():
                continue
            seen_any = True
            yield lineno, _parse_line(path, lineno, raw)
        if not seen_any:
            logger.warning("%s: empty input file", path)


def load_pairs(path) -> list[EvalPair]:
    """Load (reference, prediction) pairs; ids must be unique and
    references non-empty."""
    pairs: list[EvalPair] = []
    seen: set[str] = set()
    for lineno, obj in _iter_records(path):
        pid = _string_field(path, lineno, obj, "id")
        reference = _string_field(path, lineno, obj, "reference")
        prediction = _string_field(path, lineno, obj, "prediction")
        if pid in seen:
            raise ValidationError(f"{path}: line {lineno}: duplicate id {pid!r}")
        if not reference:
            raise ValidationError(f"{path}: line {lineno}: empty reference (id {pid!r})")
        seen.add(pid)
        pairs.append(EvalPair(id=pid, reference=reference, prediction=prediction))
    return pairs


def load_annotations(path) -> list[AnnotatedPair]:
    """Load annotated pairs; each record adds integer annotator scores in
    0..4, averaged into mean_score."""
    out: list[AnnotatedPair] = []
    seen: set[str] = set()
    for lineno, obj in _iter_records(path):
        pid = _string_field(path, lineno, obj, "id")
        reference = _string_field(path, lineno, obj, "reference")
        prediction = _string_field(path, lineno, obj, "prediction")
        if pid in seen:
            raise ValidationError(f"{path}: line {lineno}: duplicate id {pid!r}")
        if not reference:
            raise ValidationError(f"{path}: line {lineno}: empty reference (id {pid!r})")
        seen.add(pid)
        scores = obj.get("scores")
        if not isinstance(scores, list) or not scores:
            raise ValidationError(
                f"{path}: line {lineno}: record {pid!r} needs a non-empty 'scores' list"
            )
        try:
            mean = average_human(scores)
        except ValidationError as exc:
            raise ValidationError(f"{path}: record {pid!r}: {exc}") from None
        out.append(
            AnnotatedPair(
                id=pid,
                reference=reference,
                prediction=prediction,
                annotator_scores=tuple(scores),
                mean_score=mean,
            )
        )
    return out


def load_commit_corpus(path) -> list[CommitRecord]:
    """Load commit records; unknown language tags map to 'other' with a
    warning, empty diffs/messages are rejected."""
    out: list[CommitRecord] = []
    seen: set[str] = set()
    for lineno, obj in _iter_records(path):
        cid = _string_field(path, lineno, obj, "id")
        diff = _string_field(path, lineno, obj, "diff")
        message = _string_field(path, lineno, obj, "message")
        lang = _string_field(path, lineno, obj, "lang")
        if cid in seen:
            raise ValidationError(f"{path}: line {lineno}: duplicate id {cid!r}")
        if not diff:
            raise ValidationError(f"{path}: record {cid!r}: empty diff")
        if not message:
            raise ValidationError(f"{path}: record {cid!r}: empty message")
        if lang not in LANG_TAGS:
            logger.warning("%s: record %r: unknown lang %r mapped to 'other'", path, cid, lang)
            lang = "other"
        seen.add(cid)
        out.append(CommitRecord(id=cid, diff=diff, message=message, lang=lang))
    return out


def _dump(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False)


def save_pairs(pairs: Iterable[EvalPair], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for p in pairs:
            fh.write(_dump({"id": p.id, "reference": p.reference, "prediction": p.prediction}))
            fh.write("\n")


def save_annotations(pairs: Iterable[AnnotatedPair], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for p in pairs:
            fh.write(
                _dump(
                    {
                        "id": p.id,
                        "reference": p.reference,
                        "prediction": p.prediction,
                        "scores": list(p.annotator_scores),
                    }
                )
            )
            fh.write("\n")


def save_commits(records: Iterable[CommitRecord], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(_dump({"id": r.id, "diff": r.diff, "message": r.message, "lang": r.lang}))
            fh.write("\n")


# ---------------------------------------------------------------------------
# Reports

TABLE = "table"
STRUCTURED = "structured"
FORMATS = (TABLE, STRUCTURED)


def _fmt_score(v: float | None) -> str:
    return "NA" if v is None else f"{v:.4f}"


def _fmt_pct(v: float | None) -> str:
    return "NA" if v is None else f"{v:.2f}"


def _csv_row(cells: Sequence[str]) -> str:
    out = []
    for cell in cells:
        if any(c in cell for c in ",\"\n"):
            cell = '"' + cell.replace('"', '""') + '"'
        out.append(cell)
    return ",".join(out)


@dataclass
class ScoreReport:
    """Per-pair scores for the selected metrics plus their corpus means
    (as percentages)."""

    metrics: list[str]
    rows: list[tuple[str, dict[str, float]]]
    mean_pct: dict[str, float | None]

    def render(self, fmt: str) -> str:
        buf = StringIO()
        if fmt == TABLE:
            buf.write(_csv_row(["id"] + self.metrics) + "\n")
            for pid, scores in self.rows:
                buf.write(
                    _csv_row([pid] + [_fmt_score(scores[m]) for m in self.metrics]) + "\n"
                )
            buf.write(
                _csv_row(["mean_pct"] + [_fmt_pct(self.mean_pct[m]) for m in self.metrics])
                + "\n"
            )
        else:
            for pid, scores in self.rows:
                buf.write(_dump({"id": pid, "scores": {m: scores[m] for m in self.metrics}}))
                buf.write("\n")
            buf.write(_dump({"summary": {"mean_pct": self.mean_pct}}))
            buf.write("\n")
        return buf.getvalue()


@dataclass
class AblationRow:
    metric: str
    factor: str
    without_value: float | None
    with_values: list[float | None]
    clean: float | None


@dataclass
class AblationReport:
    rows: list[AblationRow] = field(default_factory=list)

    def render(self, fmt: str) -> str:
        buf = StringIO()
        if fmt == TABLE:
            buf.write("metric,factor,without,with,clean\n")
            for row in self.rows:
                with_cell = ", ".join(_fmt_score(v) for v in row.with_values)
                buf.write(
                    _csv_row(
                        [
                            row.metric,
                            row.factor,
                            _fmt_score(row.without_value),
                            with_cell,
                            _fmt_score(row.clean),
                        ]
                    )
                    + "\n"
                )
        else:
            for row in self.rows:
                buf.write(
                    _dump(
                        {
                            "metric": row.metric,
                            "factor": row.factor,
                            "without": row.without_value,
                            "with": row.with_values,
                            "clean": row.clean,
                        }
                    )
                )
                buf.write("\n")
        return buf.getvalue()


@dataclass
class CorrelationReport:
    rows: list[tuple[str, float | None, int]]

    def render(self, fmt: str) -> str:
        buf = StringIO()
        if fmt == TABLE:
            buf.write("metric,rho,n\n")
            for metric, rho, n in self.rows:
                buf.write(_csv_row([metric, _fmt_score(rho), str(n)]) + "\n")
        else:
            for metric, rho, n in self.rows:
                buf.write(_dump({"metric": metric, "rho": rho, "n": n}))
                buf.write("\n")
        return buf.getvalue()


LANG_COLUMNS = (("cpp", "C++"), ("csharp", "C#"), ("java", "Java"),
                ("javascript", "JS"), ("python", "Py"))


@dataclass
class LangReport:
    """Per-language percentage means in the five-language layout plus an
    unweighted Avg column."""

    model: str
    per_lang: dict[str, float | None]

    @property
    def avg(self) -> float | None:
        present = [v for v in self.per_lang.values() if v is not None]
        return sum(present) / len(present) if present else None

    def render(self, fmt: str) -> str:
        labels = [label for _tag, label in LANG_COLUMNS]
        if fmt == TABLE:
            header = _csv_row(["model"] + labels + ["Avg"]) + "\n"
            cells = [self.model]
            cells += [_fmt_pct(self.per_lang.get(tag)) for tag, _ in LANG_COLUMNS]
            cells.append(_fmt_pct(self.avg))
            return header + _csv_row(cells) + "\n"
        obj: dict = {"model": self.model}
        for tag, label in LANG_COLUMNS:
            obj[label] = self.per_lang.get(tag)
        obj["Avg"] = self.avg
        return _dump(obj) + "\n"


def render_report(report, fmt: str) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"unknown report format {fmt!r}")
    return report.render(fmt)


def write_report(report, path, fmt: str = TABLE) -> None:
    """Serialize a report; identical reports produce byte-identical files."""
    text = render_report(report, fmt)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
