"""Precision-recall scoring against hand counts and a pure-python oracle."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shapesig import (
    EvalReport,
    InvalidCounts,
    MissingRelevant,
    PrPoint,
    RankedResult,
    UnbalancedClasses,
    evaluate,
    export_report,
    pr_curve,
    precision,
    recall,
)
from conftest import synth_index


def ranked(hit_classes):
    hits = [
        (f"{cls}-{i}", cls, float(i)) for i, cls in enumerate(hit_classes, start=1)
    ]
    return RankedResult(query_id="q", hits=hits)


# ---------------------------------------------------- precision / recall

def test_precision_examples():
    assert precision(5, 10) == 0.5
    assert precision(10, 10) == 1.0
    assert precision(0, 7) == 0.0


def test_recall_examples():
    assert recall(10, 20) == 0.5
    assert recall(20, 20) == 1.0
    assert recall(0, 20) == 0.0


def test_precision_rejects_bad_counts():
    with pytest.raises(InvalidCounts):
        precision(1, 0)
    with pytest.raises(InvalidCounts):
        precision(11, 10)
    with pytest.raises(InvalidCounts):
        precision(-1, 10)


def test_recall_rejects_bad_counts():
    with pytest.raises(InvalidCounts):
        recall(0, 0)
    with pytest.raises(InvalidCounts):
        recall(21, 20)


# -------------------------------------------------------------- pr_curve

def test_pr_curve_perfect_ranking():
    points = pr_curve(ranked(["a"] * 20 + ["b"] * 10), "a", 20)
    assert len(points) == 20
    assert [p.precision for p in points] == [1.0] * 20
    assert points[0].recall == 1 / 20
    assert points[-1].recall == 1.0


def test_pr_curve_two_relevant_at_ranks_one_and_four():
    points = pr_curve(ranked(["a", "b", "b", "a", "b"]), "a", 2)
    assert points == [PrPoint(0.5, 1.0), PrPoint(1.0, 0.5)]


def test_pr_curve_missing_relevant():
    with pytest.raises(MissingRelevant):
        pr_curve(ranked(["a", "b", "a"]), "a", 3)


@given(st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_pr_curve_matches_independent_rank_walk(seed):
    rng = np.random.default_rng(seed)
    classes = ["rel"] * 5 + ["other"] * 25
    rng.shuffle(classes)
    points = pr_curve(ranked(classes), "rel", 5)
    found = 0
    expected = []
    for rank_index, cls in enumerate(classes):
        if cls == "rel":
            found += 1
            expected.append((found / 5, found / (rank_index + 1)))
    assert [(p.recall, p.precision) for p in points] == expected


# -------------------------------------------------------------- evaluate

def separable_index(per_class=4):
    """Same-class descriptors identical, classes far apart."""
    ids, classes, vectors = [], [], []
    for c, name in enumerate(("ant", "bee", "cat")):
        for i in range(per_class):
            ids.append(f"{name}-{i + 1}")
            classes.append(name)
            vectors.append([100.0 * c, 100.0 * c])
    return synth_index(ids, classes, vectors)


def test_evaluate_perfectly_separable_toy_index():
    report = evaluate(separable_index(), allow_unbalanced=True)
    assert report.avg_low == 100.0
    assert report.avg_high == 100.0
    assert all(p.precision == 1.0 for p in report.curve)
    assert [p.recall for p in report.curve] == [0.25, 0.5, 0.75, 1.0]


def test_evaluate_self_match_gives_first_point_precision_one():
    rng = np.random.default_rng(1)
    index = synth_index(
        [f"a-{i}" for i in range(4)] + [f"b-{i}" for i in range(4)],
        ["a"] * 4 + ["b"] * 4,
        rng.normal(size=(8, 6)),
    )
    report = evaluate(index, allow_unbalanced=True)
    for curve in report.per_query.values():
        assert curve[0].precision == 1.0


def test_evaluate_rejects_unequal_class_sizes():
    index = synth_index(
        ["a-1", "a-2", "b-1"], ["a", "a", "b"], np.eye(3, 4)
    )
    with pytest.raises(UnbalancedClasses):
        evaluate(index, allow_unbalanced=True)


def test_evaluate_requires_twenty_per_class_by_default():
    with pytest.raises(UnbalancedClasses):
        evaluate(separable_index())


def _evaluate_oracle(index, m):
    """Plain-python re-derivation of the low/high averages."""
    n = len(index)
    low, high = [], []
    for i in range(n):
        dists = []
        for j in range(n):
            d = float(np.sqrt(((index.vectors[i] - index.vectors[j]) ** 2).sum()))
            dists.append((d, str(index.ids[j]), str(index.classes[j])))
        dists.sort()
        found = 0
        for rank_index, (_, _, cls) in enumerate(dists):
            if cls == index.classes[i]:
                found += 1
                p = found / (rank_index + 1)
                (low if found <= m // 2 else high).append(p)
                if found == m:
                    break
    return 100.0 * np.mean(low), 100.0 * np.mean(high)


@given(st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_evaluate_matches_pure_python_oracle(seed):
    rng = np.random.default_rng(seed)
    per_class, n_classes = 6, 3
    ids, classes = [], []
    for c in range(n_classes):
        for i in range(per_class):
            ids.append(f"k{c}-{i + 1}")
            classes.append(f"k{c}")
    # overlapping clusters so rankings are non-trivial
    vectors = rng.normal(size=(per_class * n_classes, 4))
    vectors += np.repeat(rng.normal(size=(n_classes, 4)), per_class, axis=0)
    index = synth_index(ids, classes, vectors)
    report = evaluate(index, allow_unbalanced=True)
    low, high = _evaluate_oracle(index, per_class)
    assert report.avg_low == pytest.approx(low, abs=1e-9)
    assert report.avg_high == pytest.approx(high, abs=1e-9)
    n_levels = per_class
    assert all(len(c) == n_levels for c in report.per_query.values())
    # the reported curve is the per-level mean over queries
    for j in range(n_levels):
        level_mean = np.mean([c[j].precision for c in report.per_query.values()])
        assert report.curve[j].precision == pytest.approx(level_mean, abs=1e-12)


def test_evaluate_is_deterministic():
    index = separable_index()
    a = evaluate(index, allow_unbalanced=True)
    b = evaluate(index, allow_unbalanced=True)
    assert a == b


# ---------------------------------------------------------- export_report

def test_export_single_report_writes_curve_csv(tmp_path):
    report = evaluate(separable_index(), allow_unbalanced=True)
    written = export_report(report, tmp_path)
    assert [p.name for p in written] == ["summary.csv", "curve.csv"]
    summary = (tmp_path / "summary.csv").read_text().splitlines()
    assert summary == ["kind,avg_low,avg_high", "pc,100.000000,100.000000"]
    curve = (tmp_path / "curve.csv").read_text().splitlines()
    assert curve[0] == "recall_level,mean_precision"
    assert len(curve) == 1 + 4
    assert curve[1] == "0.250000,1.000000"


def test_export_many_reports_names_curves_by_kind(tmp_path):
    reports = [
        EvalReport(kind="cc", per_query={}, avg_low=50.0, avg_high=25.0,
                   curve=[PrPoint(0.5, 0.5), PrPoint(1.0, 0.25)]),
        EvalReport(kind="fsd", per_query={}, avg_low=70.0, avg_high=35.0,
                   curve=[PrPoint(0.5, 0.7), PrPoint(1.0, 0.35)]),
    ]
    written = export_report(reports, tmp_path)
    names = [p.name for p in written]
    assert names == ["summary.csv", "curve_fsd.csv", "curve_cc.csv"]
    summary = (tmp_path / "summary.csv").read_text().splitlines()
    # canonical ordering puts the side-distance method first
    assert summary[1].startswith("fsd,70.000000")
    assert summary[2].startswith("cc,50.000000")


def test_export_is_byte_deterministic(tmp_path):
    report = evaluate(separable_index(), allow_unbalanced=True)
    export_report(report, tmp_path / "one")
    export_report(report, tmp_path / "two")
    for name in ("summary.csv", "curve.csv"):
        assert (tmp_path / "one" / name).read_bytes() == (
            tmp_path / "two" / name
        ).read_bytes()
