"""Retrieval scoring: per-query precision-recall plus their averages.

Every record of an index queries the full index (the query itself stays in
the database and counts as its own first relevant hit, which it reaches at
rank 1 through its zero self-distance).  With m members per class, each
query yields exactly m curve points at recall levels k/m; precision is read
off exactly at the rank where the k-th relevant item appears, with no
interpolation.  The low/high split averages precision over levels <= 50%
and > 50% respectively, reported as percentages.
"""

from __future__ import annotations

import numpy as np
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

from .errors import InvalidCounts, MissingRelevant, UnbalancedClasses
from .index import FeatureIndex, RankedResult

# Row order used for multi-descriptor summaries.
KIND_ORDER = ("fsd", "pc", "cc", "arc", "af", "tar", "cld")


class PrPoint(NamedTuple):
    recall: float
    precision: float


@dataclass(frozen=True)
class EvalReport:
    """Per-query curves plus their low/high-recall averages (percent)."""

    kind: str
    per_query: dict[str, list[PrPoint]]
    avg_low: float
    avg_high: float
    curve: list[PrPoint]


def precision(relevant_retrieved: int, retrieved: int) -> float:
    """Relevant retrieved over total retrieved."""
    if retrieved < 1:
        raise InvalidCounts(f"retrieved must be >= 1, got {retrieved}")
    if not 0 <= relevant_retrieved <= retrieved:
        raise InvalidCounts(
            f"relevant_retrieved must lie in [0, {retrieved}], got {relevant_retrieved}"
        )
    return relevant_retrieved / retrieved


def recall(relevant_retrieved: int, relevant_total: int) -> float:
    """Relevant retrieved over total relevant in the database."""
    if relevant_total < 1:
        raise InvalidCounts(f"relevant_total must be >= 1, got {relevant_total}")
    if not 0 <= relevant_retrieved <= relevant_total:
        raise InvalidCounts(
            f"relevant_retrieved must lie in [0, {relevant_total}], got {relevant_retrieved}"
        )
    return relevant_retrieved / relevant_total


def pr_curve(
    ranking: RankedResult, query_class: str, relevant_total: int
) -> list[PrPoint]:
    """Walk a full ranking; emit one point per relevant item found.

    The k-th relevant item at rank r contributes the point
    (k / relevant_total, k / r).
    """
    points: list[PrPoint] = []
    found = 0
    for rank, (_, cls, _) in enumerate(ranking.hits, start=1):
        if cls == query_class:
            found += 1
            points.append(
                PrPoint(recall(found, relevant_total), precision(found, rank))
            )
            if found == relevant_total:
                return points
    raise MissingRelevant(
        f"ranking holds {found} items of class {query_class!r}, need {relevant_total}"
    )


def evaluate(index: FeatureIndex, allow_unbalanced: bool = False) -> EvalReport:
    """Score every record as a query against the whole index.

    Classes must all have the same member count; the benchmark layout is 20
    per class, and any other (still uniform) size needs
    ``allow_unbalanced=True``.
    """
    labels, counts = np.unique(index.classes, return_counts=True)
    if len(labels) == 0:
        raise UnbalancedClasses("index has no records")
    if counts.min() != counts.max():
        raise UnbalancedClasses(
            f"class sizes range from {counts.min()} to {counts.max()}; "
            "every class must have the same member count"
        )
    m = int(counts[0])
    if m != 20 and not allow_unbalanced:
        raise UnbalancedClasses(
            f"classes have {m} members, expected 20 (pass allow_unbalanced "
            "for uniform toy layouts)"
        )

    n_low = m // 2  # recall k/m <= 1/2  <=>  k <= m//2
    ks = np.arange(1, m + 1)
    levels = ks / m
    per_query: dict[str, list[PrPoint]] = {}
    prec = np.empty((len(index), m), dtype=np.float64)
    for i in range(len(index)):
        dist = np.sqrt(((index.vectors - index.vectors[i]) ** 2).sum(axis=1))
        order = np.lexsort((index.ids, dist))
        relevant = index.classes[order] == index.classes[i]
        ranks = np.flatnonzero(relevant)[:m] + 1
        prec[i] = ks / ranks
        per_query[str(index.ids[i])] = [
            PrPoint(float(levels[k - 1]), float(prec[i, k - 1])) for k in ks
        ]
    curve_means = prec.mean(axis=0)
    curve = [PrPoint(float(levels[j]), float(curve_means[j])) for j in range(m)]
    return EvalReport(
        kind=index.kind,
        per_query=per_query,
        avg_low=100.0 * float(prec[:, :n_low].mean()),
        avg_high=100.0 * float(prec[:, n_low:].mean()),
        curve=curve,
    )


def export_report(
    reports: EvalReport | Sequence[EvalReport], out_dir: str | Path
) -> list[Path]:
    """Write ``summary.csv`` plus one curve CSV per report, 6-decimal fixed.

    A single report writes ``curve.csv``; several write ``curve_<kind>.csv``
    each.  Summary rows follow the canonical kind order.
    """
    if isinstance(reports, EvalReport):
        reports = [reports]
    reports = sorted(
        reports,
        key=lambda r: KIND_ORDER.index(r.kind) if r.kind in KIND_ORDER else len(KIND_ORDER),
    )
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    summary = out / "summary.csv"
    with open(summary, "w", encoding="utf-8", newline="") as fh:
        fh.write("kind,avg_low,avg_high\n")
        for rep in reports:
            fh.write(f"{rep.kind},{rep.avg_low:.6f},{rep.avg_high:.6f}\n")
    written.append(summary)

    for rep in reports:
        name = "curve.csv" if len(reports) == 1 else f"curve_{rep.kind}.csv"
        path = out / name
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("recall_level,mean_precision\n")
            for point in rep.curve:
                fh.write(f"{point.recall:.6f},{point.precision:.6f}\n")
        written.append(path)
    return written
