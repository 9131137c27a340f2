import numpy as np
import pytest

from conftest import random_matrix
from pivotcc import LabelMatrix
from pivotcc.datagen import BinarySpec, gen_correlated_binary
from pivotcc.errors import InvalidArgumentError
from pivotcc.experiments import SweepConfig, bench, clamp_outliers, run_sweep, summarize, summary_csv
from pivotcc.io import RunReport


def report(values, R=1):
    return RunReport("pivot", R, 0, len(values), list(values), [1.0] * len(values))


def test_clamp_examples():
    assert clamp_outliers([10, 10, 10, 100]).tolist() == [10, 10, 10, 10]
    assert clamp_outliers([1, 2, 3, 4, 100]).tolist() == [1, 2, 3, 4, 5]
    assert clamp_outliers([10, 10, 10, 100], "median-multiple").tolist() == [10, 10, 10, 30]
    assert clamp_outliers([10, 10, 10, 100], "none").tolist() == [10, 10, 10, 100]
    with pytest.raises(InvalidArgumentError):
        clamp_outliers([1], "bogus")


def test_summarize_examples():
    full = report([7, 7, 7], R=5)
    rows = summarize([full, report([7, 7, 7], R=2)], full)
    assert [r.R for r in rows] == [2, 5]
    assert rows[0].mean == 7 and rows[0].std == 0 and rows[0].ratio_to_full == 1
    rows = summarize([report([10, 10, 10, 100])], full)
    assert rows[0].mean == 10
    with pytest.raises(InvalidArgumentError):
        summarize([], full)


def test_summary_csv_header():
    rows = summarize([report([3, 5], R=2)], report([4, 4], R=2))
    assert summary_csv(rows).splitlines()[0] == "R,mean,std,mean_ms,ratio_to_full"


def test_sweep_includes_full_row_and_rejects_big_R(nprng):
    m = random_matrix(nprng, 20, 5)
    reps = run_sweep(m, SweepConfig("pivot", (2, 3), 3, 9))
    assert [r.R for r in reps] == [2, 3, 5]
    assert all(r.runs == 3 and len(r.disagreements) == 3 for r in reps)
    with pytest.raises(InvalidArgumentError):
        run_sweep(m, SweepConfig("pivot", (6,), 1, 0))
    with pytest.raises(InvalidArgumentError):
        run_sweep(m, SweepConfig("magic", (2,), 1, 0))


def test_sweep_single_input_is_exact():
    m = LabelMatrix.from_columns([[0, 0, 1, 2, 2, 1]])
    reps = run_sweep(m, SweepConfig("pivot", (), 4, 3))
    assert reps[0].disagreements == [0, 0, 0, 0]


def test_sweep_thread_independent(nprng):
    m = random_matrix(nprng, 40, 8)
    a = run_sweep(m, SweepConfig("pivot+ils", (2, 4), 5, 17, threads=1))
    b = run_sweep(m, SweepConfig("pivot+ils", (2, 4), 5, 17, threads=4))
    assert [r.disagreements for r in a] == [r.disagreements for r in b]


def test_best_of_dominates_pivot_on_same_seeds(nprng):
    m = random_matrix(nprng, 6, 3)
    piv = run_sweep(m, SweepConfig("pivot", (1, 2), 20, 5))
    best = run_sweep(m, SweepConfig("best-of", (1, 2), 20, 5))
    for p, b in zip(piv, best):
        assert all(x <= y for x, y in zip(b.disagreements, p.disagreements))
        assert np.mean(b.disagreements) <= np.mean(p.disagreements)


def test_bench_small():
    m = gen_correlated_binary(BinarySpec(1000, 6, 0.3, 0.3, seed=1))
    out = bench(m, runs=3, seed=2)
    assert out["same_partitions"]
    assert out["on_the_fly"]["quadratic_free"]
    assert len(out["precomputed"]["run_ms"]) == 3
    refused = bench(m, runs=1, max_bytes=10)
    assert refused["precomputed"] is None and "precompute_refused" in refused
    forced = bench(m, runs=1, max_bytes=10, allow_quadratic=True, audit=False)
    assert forced["precomputed"] is not None
