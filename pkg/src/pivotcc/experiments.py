"""Sampling sweeps, outlier-robust summaries and the precompute benchmark."""

import time
import tracemalloc
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .algorithms import ALGORITHMS, pivot, run_algorithm
from .core import LabelMatrix
from .errors import InvalidArgumentError
from .io import RunReport
from .objective import total_disagreement
from .rng import RandomSource
from .similarity import LabelOracle, precompute, sample_columns

CLAMP_RULES = ("mad", "median-multiple", "none")


@dataclass(frozen=True)
class SweepConfig:
    algorithm: str = "pivot"
    r_values: tuple = ()
    runs: int = 10
    seed: int = 0
    threads: int = 1

    def validate(self, k):
        if self.algorithm not in ALGORITHMS:
            raise InvalidArgumentError(f"unknown algorithm {self.algorithm!r}; choose from {ALGORITHMS}")
        if self.runs < 1:
            raise InvalidArgumentError("runs must be >= 1")
        bad = [r for r in self.r_values if not 1 <= r <= k]
        if bad:
            raise InvalidArgumentError(f"R values {bad} outside [1, k={k}]")

    def sample_sizes(self, k):
        """Requested sizes plus the full set ``k``, ascending."""
        return sorted(set(int(r) for r in self.r_values) | {k})


def _one_run(m, algorithm, R, seed):
    src = RandomSource(seed)
    t0 = time.perf_counter()
    sample = sample_columns(m, R, src.spawn(0))
    c = run_algorithm(algorithm, LabelOracle(sample), src.spawn(1), full=m)
    elapsed = (time.perf_counter() - t0) * 1000.0
    return total_disagreement(c, m), elapsed


def run_sweep(m: LabelMatrix, config: SweepConfig):
    """One :class:`RunReport` per sample size.

    Run ``j`` of the ``i``-th sample size uses seed
    ``config.seed + i * config.runs + j``; a fresh column sample is drawn per
    run and every result is scored against the full matrix. Runs fan out
    over ``config.threads`` workers without affecting the results.
    """
    config.validate(m.k)
    sizes = config.sample_sizes(m.k)
    jobs = [(R, config.seed + i * config.runs + j) for i, R in enumerate(sizes) for j in range(config.runs)]

    def work(job):
        return _one_run(m, config.algorithm, *job)

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(work, jobs))
    else:
        results = [work(job) for job in jobs]
    reports = []
    for i, R in enumerate(sizes):
        chunk = results[i * config.runs:(i + 1) * config.runs]
        reports.append(
            RunReport(
                algorithm=config.algorithm,
                R=R,
                seed=config.seed + i * config.runs,
                runs=config.runs,
                disagreements=[d for d, _ in chunk],
                wall_ms=[t for _, t in chunk],
            )
        )
    return reports


def clamp_outliers(values, rule="mad"):
    """Pull outlying values back to the edge of a window around the median.

    ``mad``: the window is ``median ± 2 * median(|x - median|)``.
    ``median-multiple``: the window is ``median ± 2 * median``.
    ``none``: values are returned unchanged.
    """
    x = np.asarray(values, dtype=np.float64)
    if rule == "none":
        return x
    med = np.median(x)
    if rule == "mad":
        half = 2.0 * np.median(np.abs(x - med))
    elif rule == "median-multiple":
        half = 2.0 * abs(med)
    else:
        raise InvalidArgumentError(f"unknown clamp rule {rule!r}")
    return np.clip(x, med - half, med + half)


@dataclass(frozen=True)
class SummaryRow:
    R: int
    mean: float
    std: float
    mean_ms: float
    ratio_to_full: float


def summarize(reports, full_baseline, clamp_rule="mad"):
    """Mean, spread and ratio-to-full per report after outlier clamping.

    ``std`` is the population standard deviation of the clamped values.
    """
    reports = list(reports)
    if not reports:
        raise InvalidArgumentError("no reports to summarize")
    base = float(np.mean(clamp_outliers(full_baseline.disagreements, clamp_rule)))
    rows = []
    for r in sorted(reports, key=lambda r: r.R):
        vals = clamp_outliers(r.disagreements, clamp_rule)
        mean = float(np.mean(vals))
        ratio = mean / base if base > 0 else (1.0 if mean == 0 else float("inf"))
        rows.append(SummaryRow(r.R, mean, float(np.std(vals)), float(np.mean(r.wall_ms)), ratio))
    return rows


def summary_csv(rows):
    lines = ["R,mean,std,mean_ms,ratio_to_full"]
    lines += [f"{r.R},{r.mean:.6f},{r.std:.6f},{r.mean_ms:.3f},{r.ratio_to_full:.6f}" for r in rows]
    return "\n".join(lines) + "\n"


def _timed_pivots(oracle, runs, seed):
    out = []
    times = []
    for j in range(runs):
        t0 = time.perf_counter()
        out.append(pivot(oracle, RandomSource(seed + j)))
        times.append((time.perf_counter() - t0) * 1000.0)
    return out, times


def _peak_bytes(fn):
    tracemalloc.start()
    try:
        fn()
        return tracemalloc.get_traced_memory()[1]
    finally:
        tracemalloc.stop()


def bench(m: LabelMatrix, runs=10, seed=0, max_bytes=1 << 30, allow_quadratic=False, audit=True):
    """Time Pivot with a precomputed table against Pivot on the fly.

    Path (a) precomputes every similarity, then runs Pivot ``runs`` times on
    the table. Path (b) prepares a contiguous label matrix, then runs Pivot
    on label rows. Both use seeds ``seed .. seed+runs-1``, so they produce
    the same partitions. With ``audit`` each path is re-run under
    :mod:`tracemalloc` to record its peak allocation. For the on-the-fly
    path only the Pivot runs are traced (label preparation is a copy of the
    Θ(n·k) input); they pass the audit when their peak stays below one byte
    per node pair, the least any Θ(n²) table could occupy.

    Returns a JSON-ready dict. Path (a) is skipped when its table would
    exceed ``max_bytes`` and ``allow_quadratic`` is false.
    """
    n = m.n
    pair_count = n * (n - 1) // 2
    table_bytes = 4 * pair_count
    result = {"n": n, "k": m.k, "runs": runs, "seed": seed, "table_bytes": table_bytes}

    def fly_path():
        prepared = LabelMatrix(m.labels)
        return LabelOracle(prepared)

    t0 = time.perf_counter()
    fly_oracle = fly_path()
    fly_prep = (time.perf_counter() - t0) * 1000.0
    fly_parts, fly_times = _timed_pivots(fly_oracle, runs, seed)
    result["on_the_fly"] = {
        "prep_ms": round(fly_prep, 3),
        "run_ms": [round(t, 3) for t in fly_times],
        "total_ms": round(fly_prep + sum(fly_times), 3),
        "label_bytes": m.nbytes,
    }
    if audit:
        peak = _peak_bytes(lambda: _timed_pivots(fly_oracle, runs, seed))
        result["on_the_fly"]["peak_bytes"] = peak
        result["on_the_fly"]["quadratic_free"] = peak < pair_count

    if table_bytes > max_bytes and not allow_quadratic:
        result["precomputed"] = None
        result["precompute_refused"] = f"table needs {table_bytes} bytes, cap is {max_bytes}"
        result["disagreements"] = [total_disagreement(c, m) for c in fly_parts]
        return result

    t0 = time.perf_counter()
    table = precompute(m, max_bytes=None if allow_quadratic else max_bytes)
    pre_prep = (time.perf_counter() - t0) * 1000.0
    pre_parts, pre_times = _timed_pivots(table, runs, seed)
    result["precomputed"] = {
        "prep_ms": round(pre_prep, 3),
        "run_ms": [round(t, 3) for t in pre_times],
        "total_ms": round(pre_prep + sum(pre_times), 3),
        "table_bytes": table.nbytes,
    }
    del table
    if audit:
        result["precomputed"]["peak_bytes"] = _peak_bytes(lambda: _timed_pivots(precompute(m), runs, seed))
    result["same_partitions"] = all(a == b for a, b in zip(fly_parts, pre_parts))
    result["disagreements"] = [total_disagreement(c, m) for c in fly_parts]
    return result

