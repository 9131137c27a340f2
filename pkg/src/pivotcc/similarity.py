"""Similarity oracles: on-the-fly labels, precomputed table, graph adjacency."""

from dataclasses import dataclass

import numpy as np

from .core import LabelMatrix, SimilarityOracle
from .errors import InvalidArgumentError, InvalidInstanceError, ResourceError
from .rng import as_source


def _check_pair(m, u, v):
    n = m.n
    if not (0 <= u < n and 0 <= v < n):
        raise InvalidArgumentError(f"node pair ({u}, {v}) out of range for n={n}")


def match_count(m, u, v):
    """Number of input clusterings that put ``u`` and ``v`` together."""
    _check_pair(m, u, v)
    return int(np.count_nonzero(m.labels[u] == m.labels[v]))


def label_similarity(m, u, v):
    """Fraction of the ``k`` input clusterings in which ``u`` and ``v`` agree.

    Runs in O(k) on the two label rows; nothing is cached.
    """
    return match_count(m, u, v) / m.k


class LabelOracle(SimilarityOracle):
    """Similarities computed from label rows at query time.

    Memory is that of the label matrix itself, Θ(n·k). A batched query from
    node ``u`` touches one row per target node.
    """

    def __init__(self, m):
        self.matrix = m
        self._labels = m.labels
        self._k = m.k

    @property
    def n(self):
        return self.matrix.n

    @property
    def k(self):
        return self._k

    def query(self, u, v):
        return label_similarity(self.matrix, u, v)

    def match_count(self, u, v):
        return match_count(self.matrix, u, v)

    def match_counts(self, u, vs):
        return np.count_nonzero(self._labels[vs] == self._labels[u], axis=1)

    def similarities(self, u, vs):
        return self.match_counts(u, vs) / self._k

    def attaches(self, u, vs):
        return 2 * self.match_counts(u, vs) >= self._k

    def signed(self, u, vs):
        return 2 * self.match_counts(u, vs) - self._k


@dataclass(frozen=True)
class SampledColumns:
    """A choice of ``R`` distinct columns of a parent label matrix."""

    parent: LabelMatrix
    chosen: tuple

    def __post_init__(self):
        k = self.parent.k
        if not 1 <= len(self.chosen) <= k:
            raise InvalidArgumentError(f"sample size must lie in [1, {k}]")
        if len(set(self.chosen)) != len(self.chosen) or not all(0 <= c < k for c in self.chosen):
            raise InvalidArgumentError("sampled columns must be distinct and in range")

    @property
    def R(self):
        return len(self.chosen)

    def to_matrix(self):
        return self.parent.select_columns(self.chosen)


def choose_columns(m, R, rng):
    """Draw ``R`` distinct column indices of ``m`` uniformly at random."""
    if not 1 <= R <= m.k:
        raise InvalidArgumentError(f"R={R} must lie in [1, k={m.k}]")
    rng = as_source(rng)
    return SampledColumns(m, tuple(rng.sample_without_replacement(m.k, R).tolist()))


def sample_columns(m, R, rng):
    """Label matrix made of ``R`` distinct, uniformly chosen columns of ``m``.

    Sampling is without replacement; ``R = k`` returns every column once
    (in shuffled order).
    """
    return choose_columns(m, R, rng).to_matrix()


class PrecomputedMatrix(SimilarityOracle):
    """Dense upper-triangular table of every pairwise similarity.

    The table holds ``n(n-1)/2`` single-precision values, the Θ(n²) baseline
    the on-the-fly oracle avoids. When built from labels the input count
    ``k`` is kept, and every value is mapped back to its integer match count
    before use, so thresholds and returned floats match :class:`LabelOracle`
    bit for bit.
    """

    def __init__(self, n, values, k=None):
        values = np.asarray(values, dtype=np.float32)
        if values.shape != (n * (n - 1) // 2,):
            raise InvalidInstanceError("condensed table has the wrong length")
        self._n = int(n)
        self._values = values
        self.k = k

    @property
    def n(self):
        return self._n

    @property
    def nbytes(self):
        return self._values.nbytes

    @property
    def values(self):
        return self._values

    def _raw(self, u, vs):
        # table entries for (u, v); the diagonal is not stored and reads as 1
        vs = np.asarray(vs, dtype=np.int64)
        same = vs == u
        out = np.ones(len(vs), dtype=np.float64)
        other = vs[~same]
        if len(other):
            a = np.minimum(u, other)
            b = np.maximum(u, other)
            out[~same] = self._values[self._n * a - a * (a + 1) // 2 + b - a - 1]
        return out

    def _counts(self, u, vs):
        return np.rint(self._raw(u, vs) * self.k).astype(np.int64)

    def query(self, u, v):
        self._check(u, v)
        return float(self.similarities(u, np.array([v]))[0])

    def similarities(self, u, vs):
        if self.k is not None:
            return self._counts(u, vs) / self.k
        return self._raw(u, vs)

    def attaches(self, u, vs):
        if self.k is not None:
            return 2 * self._counts(u, vs) >= self.k
        return self._raw(u, vs) >= 0.5

    def signed(self, u, vs):
        if self.k is not None:
            return 2 * self._counts(u, vs) - self.k
        return 2.0 * self._raw(u, vs) - 1.0


def precompute(m, max_bytes=None):
    """Materialize all pairwise label similarities of ``m``.

    The caller is responsible for the ``2·n(n-1)`` bytes this needs;
    ``max_bytes`` turns an oversized request into :class:`ResourceError`
    before anything is allocated.
    """
    n = m.n
    size = n * (n - 1) // 2
    if max_bytes is not None and 4 * size > max_bytes:
        raise ResourceError(f"precomputed table needs {4 * size} bytes, cap is {max_bytes}")
    try:
        values = np.empty(size, dtype=np.float32)
    except MemoryError as exc:
        raise ResourceError(f"cannot allocate {4 * size} bytes for the similarity table") from exc
    labels = m.labels
    k = m.k
    pos = 0
    for u in range(n - 1):
        counts = np.count_nonzero(labels[u + 1:] == labels[u], axis=1)
        values[pos:pos + n - 1 - u] = counts / k
        pos += n - 1 - u
    return PrecomputedMatrix(n, values, k=k)


class GraphAdjacency:
    """Undirected simple graph as sorted per-node neighbor arrays (CSR)."""

    def __init__(self, n, edges=()):
        n = int(n)
        if n < 1:
            raise InvalidInstanceError("graph needs at least one node")
        e = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise InvalidInstanceError("edge endpoint out of range")
        if np.any(e[:, 0] == e[:, 1]):
            raise InvalidInstanceError("self-loops are not allowed")
        both = np.concatenate([e, e[:, ::-1]])
        both = np.unique(both, axis=0) if both.size else both
        self.n = n
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(both[:, 0], minlength=n), out=self.indptr[1:])
        self.indices = both[:, 1].copy()
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False

    @property
    def n_edges(self):
        return len(self.indices) // 2

    def neighbors(self, u):
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def degree(self, u):
        return int(self.indptr[u + 1] - self.indptr[u])

    def has_edge(self, u, v):
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def edges(self):
        src = np.repeat(np.arange(self.n), np.diff(self.indptr))
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])


class GraphOracle(SimilarityOracle):
    """0/1 similarities: 1 on edges and on the diagonal, 0 elsewhere."""

    def __init__(self, adj):
        self.adj = adj

    @property
    def n(self):
        return self.adj.n

    def query(self, u, v):
        self._check(u, v)
        return 1.0 if u == v or self.adj.has_edge(u, v) else 0.0

    def attaches(self, u, vs):
        vs = np.asarray(vs, dtype=np.int64)
        nb = self.adj.neighbors(u)
        i = np.minimum(np.searchsorted(nb, vs), max(len(nb) - 1, 0))
        hit = nb[i] == vs if len(nb) else np.zeros(len(vs), dtype=bool)
        return hit | (vs == u)

    def similarities(self, u, vs):
        return self.attaches(u, vs).astype(np.float64)

    def signed(self, u, vs):
        return 2 * self.attaches(u, vs).astype(np.int64) - 1


def graph_oracle(adj):
    return GraphOracle(adj)


def oracle_for(source):
    """Pick the natural oracle for a label matrix, graph, or existing oracle."""
    if isinstance(source, SimilarityOracle):
        return source
    if isinstance(source, LabelMatrix):
        return LabelOracle(source)
    if isinstance(source, GraphAdjacency):
        return GraphOracle(source)
    raise InvalidArgumentError(f"cannot build an oracle from {type(source).__name__}")
