"""Segmentation quality metrics and corpus-level reporting.

The headline metric counts common rhesis: a produced rhesis scores iff the
gold segmentation contains the identical token span.  Boundary metrics and
recall/F1 are finer-grained diagnostics on top.  Reports aggregate per
document with gold rhesis counts as weights.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .corpus import Segmentation

__all__ = [
    "PerDocRow",
    "EvalReport",
    "LengthStats",
    "rhesis_precision",
    "boundary_prf",
    "corpus_report",
    "format_report",
    "length_stats",
    "format_length_stats",
]


@dataclass(frozen=True, slots=True)
class PerDocRow:
    label: str
    rhesis_count: int
    precision: float
    recall: float = 0.0
    f1: float = 0.0
    boundary_precision: float = 0.0
    boundary_recall: float = 0.0
    boundary_f1: float = 0.0


@dataclass(frozen=True, slots=True)
class EvalReport:
    per_doc: tuple[PerDocRow, ...]
    weighted_precision: float


def _paired(auto: list[Segmentation], gold: list[Segmentation]):
    if len(auto) != len(gold):
        raise ValueError(
            f"sentence count mismatch: {len(auto)} auto vs {len(gold)} gold"
        )
    for a, g in zip(auto, gold):
        if a.sentence_id != g.sentence_id:
            raise ValueError(
                f"sentence id mismatch: {a.sentence_id!r} vs {g.sentence_id!r}"
            )
        if a.token_count != g.token_count:
            raise ValueError(
                f"token count mismatch in {a.sentence_id!r}: "
                f"{a.token_count} vs {g.token_count}"
            )
        yield a, g


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def rhesis_precision(
    auto: list[Segmentation], gold: list[Segmentation]
) -> tuple[float, float, float]:
    """Common-rhesis precision, recall, and F1 over paired sentences.

    A rhesis matches iff the same sentence's gold segmentation contains the
    identical (start, end) span.
    """
    matched = auto_total = gold_total = 0
    for a, g in _paired(auto, gold):
        auto_spans, gold_spans = set(a.spans()), set(g.spans())
        matched += len(auto_spans & gold_spans)
        auto_total += len(auto_spans)
        gold_total += len(gold_spans)
    precision = matched / auto_total if auto_total else 0.0
    recall = matched / gold_total if gold_total else 0.0
    return precision, recall, _f1(precision, recall)


def boundary_prf(
    auto: list[Segmentation], gold: list[Segmentation]
) -> tuple[float, float, float]:
    """Precision/recall/F1 over internal boundary positions.

    When neither side places any internal boundary (all sentences kept
    whole), the result is (1, 1, 1) by convention; a single empty side
    scores 1.0 vacuously on its own ratio.
    """
    matched = auto_total = gold_total = 0
    for a, g in _paired(auto, gold):
        auto_cuts, gold_cuts = set(a.cuts()), set(g.cuts())
        matched += len(auto_cuts & gold_cuts)
        auto_total += len(auto_cuts)
        gold_total += len(gold_cuts)
    if auto_total == 0 and gold_total == 0:
        return 1.0, 1.0, 1.0
    precision = matched / auto_total if auto_total else 1.0
    recall = matched / gold_total if gold_total else 1.0
    return precision, recall, _f1(precision, recall)


def corpus_report(rows) -> EvalReport:
    """Aggregate per-document rows into a weighted report.

    Rows are PerDocRow instances or tuples with at least (label,
    rhesis_count, precision); gold rhesis counts are the weights.  The
    aggregation is unit-agnostic: rows may carry rates or percentages.
    """
    if not rows:
        raise ValueError("no rows to aggregate")
    normalized = []
    for row in rows:
        normalized.append(row if isinstance(row, PerDocRow) else PerDocRow(*row))
    for row in normalized:
        if row.rhesis_count <= 0:
            raise ValueError(f"row {row.label!r}: rhesis count must be positive")
    total = sum(row.rhesis_count for row in normalized)
    weighted = sum(row.rhesis_count * row.precision for row in normalized) / total
    return EvalReport(per_doc=tuple(normalized), weighted_precision=weighted)


_REPORT_COLUMNS = (
    ("rhesis", "rhesis_count"),
    ("prec", "precision"),
    ("rec", "recall"),
    ("f1", "f1"),
    ("b-prec", "boundary_precision"),
    ("b-rec", "boundary_recall"),
    ("b-f1", "boundary_f1"),
)


def format_report(report: EvalReport) -> str:
    """Aligned text table: one row per document plus the weighted average."""

    def fmt(value) -> str:
        return str(value) if isinstance(value, int) else f"{value:.4g}"

    total = sum(row.rhesis_count for row in report.per_doc)
    rows = [["doc"] + [name for name, _ in _REPORT_COLUMNS]]
    for row in report.per_doc:
        rows.append([row.label or "-"] + [fmt(getattr(row, attr)) for _, attr in _REPORT_COLUMNS])
    averages = ["weighted avg", str(total)]
    for _, attr in _REPORT_COLUMNS[1:]:
        avg = sum(r.rhesis_count * getattr(r, attr) for r in report.per_doc) / total
        averages.append(fmt(avg))
    rows.append(averages)
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True, slots=True)
class LengthStats:
    count: int
    mean_chars: float
    std_chars: float
    mean_words: float
    std_words: float
    histogram: dict[int, int]


def length_stats(segs: list[Segmentation]) -> LengthStats:
    """Population statistics over rhesis surface lengths.

    The histogram buckets character lengths with width 5 (a bucket key of 10
    covers lengths 10-14).
    """
    texts = [r.text for seg in segs for r in seg.rhesis]
    if not texts:
        raise ValueError("no rhesis to measure")
    chars = np.array([len(t) for t in texts], dtype=float)
    words = np.array([len(t.split()) for t in texts], dtype=float)
    buckets = Counter((len(t) // 5) * 5 for t in texts)
    return LengthStats(
        count=len(texts),
        mean_chars=float(chars.mean()),
        std_chars=float(chars.std()),
        mean_words=float(words.mean()),
        std_words=float(words.std()),
        histogram=dict(sorted(buckets.items())),
    )


def format_length_stats(stats: LengthStats) -> str:
    lines = [
        f"rhesis count      {stats.count}",
        f"chars mean / std  {stats.mean_chars:.2f} / {stats.std_chars:.2f}",
        f"words mean / std  {stats.mean_words:.2f} / {stats.std_words:.2f}",
        "length histogram (5-char buckets)",
    ]
    peak = max(stats.histogram.values())
    for bucket, count in stats.histogram.items():
        bar = "#" * max(1, round(count * 40 / peak))
        lines.append(f"  {bucket:>3}-{bucket + 4:<3} {count:>5}  {bar}")
    return "\n".join(lines) + "\n"
