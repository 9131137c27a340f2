"""Synthetic consensus instances."""

import math
from dataclasses import dataclass

import numpy as np

from .algorithms import pivot
from .core import LabelMatrix
from .errors import InvalidArgumentError
from .rng import as_source, derive_seed, splitmix64_block, u64_to_unit
from .similarity import GraphOracle

_ROW_CHUNK = 2048


@dataclass(frozen=True)
class BinarySpec:
    """Shape and moments of an equicorrelated binary label matrix."""

    n: int
    k: int
    mean: float
    corr: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise InvalidArgumentError("n and k must be positive")
        if not 0 < self.mean < 1:
            raise InvalidArgumentError(f"mean must lie in (0, 1), got {self.mean}")
        if not 0 <= self.corr <= 1:
            raise InvalidArgumentError(f"corr must lie in [0, 1], got {self.corr}")


def gen_correlated_binary(spec: BinarySpec):
    """Binary label matrix with Bernoulli(mean) entries and equal column correlation.

    Each row draws a shared bit ``Z ~ Bernoulli(mean)``; column ``j`` copies
    ``Z`` with probability ``sqrt(corr)`` and otherwise takes a fresh
    ``Bernoulli(mean)`` bit. Every entry then has mean ``mean`` and any two
    columns have correlation ``sqrt(corr)**2 = corr``.

    Row ``r`` uses its own SplitMix64 stream seeded from ``(seed, r)``, so the
    output does not depend on how rows are chunked.
    """
    n, k = spec.n, spec.k
    copy_p = math.sqrt(spec.corr)
    out = np.empty((n, k), dtype=np.int64)
    for lo in range(0, n, _ROW_CHUNK):
        hi = min(n, lo + _ROW_CHUNK)
        seeds = np.array([derive_seed(spec.seed, r) for r in range(lo, hi)], dtype=np.uint64)
        u = u64_to_unit(splitmix64_block(seeds, 0, 1 + 2 * k))
        z = u[:, :1] < spec.mean
        copy = u[:, 1:k + 1] < copy_p
        fresh = u[:, k + 1:] < spec.mean
        out[lo:hi] = np.where(copy, z, fresh)
    return LabelMatrix(out)


def gen_from_graph(adj, runs, rng=None):
    """Ensemble of ``runs`` Pivot clusterings of a graph, one per column.

    Run ``i`` uses child stream ``i`` of ``rng``.
    """
    if runs < 1:
        raise InvalidArgumentError("runs must be >= 1")
    rng = as_source(rng)
    oracle = GraphOracle(adj)
    return LabelMatrix.from_columns([pivot(oracle, rng.spawn(i)) for i in range(runs)])
