"""Data types shared by every module: clusterings, label matrices, oracles."""

from abc import ABC, abstractmethod

import numpy as np

from .errors import InvalidArgumentError, InvalidInstanceError

LABEL_DTYPE = np.int64


def _canonical(labels):
    labels = np.asarray(labels)
    if labels.ndim != 1 or labels.size == 0:
        raise InvalidInstanceError("labels must be a non-empty 1-d sequence")
    if not np.issubdtype(labels.dtype, np.integer):
        if labels.dtype == object or not np.all(np.mod(labels, 1) == 0):
            raise InvalidInstanceError("labels must be integers")
        labels = labels.astype(LABEL_DTYPE)
    if labels.min() < 0:
        raise InvalidInstanceError("labels must be non-negative")
    uniq, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    # rank of each distinct label by first appearance
    rank = np.empty(len(uniq), dtype=LABEL_DTYPE)
    rank[np.argsort(first, kind="stable")] = np.arange(len(uniq), dtype=LABEL_DTYPE)
    return rank[inverse.ravel()]


class Clustering:
    """A partition of ``0..n-1`` stored as a canonical label vector.

    Cluster ids are dense ``0..c-1`` in order of first appearance, so two
    clusterings describe the same partition iff their label vectors match.
    Instances are immutable.
    """

    __slots__ = ("_labels",)

    def __init__(self, labels):
        out = _canonical(labels)
        out.flags.writeable = False
        self._labels = out

    @classmethod
    def _trusted(cls, labels):
        # labels already canonical and owned by the caller
        obj = cls.__new__(cls)
        labels = np.asarray(labels, dtype=LABEL_DTYPE)
        labels.flags.writeable = False
        obj._labels = labels
        return obj

    @property
    def labels(self):
        return self._labels

    @property
    def n(self):
        return len(self._labels)

    @property
    def n_clusters(self):
        return int(self._labels.max()) + 1

    def __len__(self):
        return len(self._labels)

    def __iter__(self):
        return iter(self._labels.tolist())

    def __eq__(self, other):
        if isinstance(other, Clustering):
            return np.array_equal(self._labels, other._labels)
        return NotImplemented

    def __hash__(self):
        return hash(self._labels.tobytes())

    def __repr__(self):
        return f"Clustering({self._labels.tolist()})"

    def clusters(self):
        """Member lists, one per cluster id."""
        order = np.argsort(self._labels, kind="stable")
        bounds = np.cumsum(cluster_sizes(self))[:-1]
        return [part.tolist() for part in np.split(order, bounds)]

    def refines(self, other):
        """True if every cluster of ``self`` lies inside one cluster of ``other``."""
        if self.n != other.n:
            return False
        parent = np.full(self.n_clusters, -1, dtype=LABEL_DTYPE)
        parent[self._labels] = other._labels
        return bool(np.all(parent[self._labels] == other._labels))


def normalize(labels):
    """Canonical clustering for any non-negative integer label sequence.

    >>> normalize([5, 5, 2]).labels.tolist()
    [0, 0, 1]
    """
    if isinstance(labels, Clustering):
        return labels
    return Clustering(labels)


def cluster_sizes(c):
    """Number of members of each cluster, indexed by cluster id."""
    return np.bincount(c.labels)


class LabelMatrix:
    """The ``n x k`` table of input cluster labels, node-major.

    Row ``v`` is node ``v``'s k-tuple of cluster ids, one per input
    clustering. Storage is a single C-contiguous integer array; nothing
    quadratic in ``n`` is ever attached.

    Parameters
    ----------
    labels : array-like of shape (n, k)
        Non-negative integer labels.
    """

    __slots__ = ("_labels",)

    def __init__(self, labels):
        arr = np.asarray(labels)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidInstanceError("label matrix must be 2-d with n >= 1 and k >= 1")
        if not np.issubdtype(arr.dtype, np.integer):
            raise InvalidInstanceError("label matrix entries must be integers")
        if arr.min() < 0:
            raise InvalidInstanceError("label matrix entries must be non-negative")
        arr = np.array(arr, dtype=LABEL_DTYPE, order="C", copy=True)
        arr.flags.writeable = False
        self._labels = arr

    @classmethod
    def from_columns(cls, columns):
        """Stack clusterings (or label sequences) of equal length as columns."""
        cols = [c.labels if isinstance(c, Clustering) else np.asarray(c) for c in columns]
        if not cols:
            raise InvalidInstanceError("need at least one clustering")
        if len({len(c) for c in cols}) != 1:
            raise InvalidInstanceError("clusterings must have equal length")
        return cls(np.column_stack(cols))

    @property
    def labels(self):
        return self._labels

    @property
    def n(self):
        return self._labels.shape[0]

    @property
    def k(self):
        return self._labels.shape[1]

    @property
    def shape(self):
        return self._labels.shape

    @property
    def nbytes(self):
        return self._labels.nbytes

    def row(self, v):
        return self._labels[v]

    def column(self, i):
        """The canonical clustering induced by input ``i``."""
        return Clustering(self._labels[:, i])

    def columns(self):
        return [self.column(i) for i in range(self.k)]

    def select_columns(self, indices):
        return LabelMatrix(self._labels[:, np.asarray(indices, dtype=np.int64)])

    def __eq__(self, other):
        if isinstance(other, LabelMatrix):
            return np.array_equal(self._labels, other._labels)
        return NotImplemented

    def __hash__(self):
        return hash((self.shape, self._labels.tobytes()))

    def __repr__(self):
        return f"LabelMatrix(n={self.n}, k={self.k})"


class SimilarityOracle(ABC):
    """Contract for pairwise similarities ``s(u, v)`` in [0, 1].

    ``s`` plays the positive weight of a pair and ``1 - s`` the negative one.
    Implementations must be symmetric with ``s(u, u) = 1``.

    Besides the scalar :meth:`query`, oracles answer batched queries from a
    single node, which is all Pivot-style algorithms need. :meth:`signed`
    returns values with the sign and ordering of ``s - 1/2`` (scaled by a
    positive constant) so integer-backed oracles can keep local-search
    arithmetic exact.
    """

    @property
    @abstractmethod
    def n(self):
        """Node count."""

    def size(self):
        return self.n

    @abstractmethod
    def query(self, u, v):
        """Similarity of one pair."""

    @abstractmethod
    def similarities(self, u, vs):
        """Float similarities ``s(u, v)`` for every ``v`` in ``vs``."""

    def attaches(self, u, vs):
        """Boolean mask of ``s(u, v) >= 1/2``."""
        return self.similarities(u, vs) >= 0.5

    def signed(self, u, vs):
        """``2 s(u, v) - 1`` up to a positive scale factor."""
        return 2.0 * self.similarities(u, vs) - 1.0

    def _check(self, *nodes):
        n = self.n
        for x in nodes:
            if not 0 <= x < n:
                raise InvalidArgumentError(f"node {x} out of range for n={n}")


class FunctionOracle(SimilarityOracle):
    """Oracle over an arbitrary symmetric function or dense matrix.

    Mostly useful for tests and small hand-built instances.
    """

    def __init__(self, n, func=None, matrix=None):
        if (func is None) == (matrix is None):
            raise InvalidArgumentError("give exactly one of func or matrix")
        self._n = int(n)
        if matrix is not None:
            matrix = np.array(matrix, dtype=np.float64)
            if matrix.shape != (self._n, self._n):
                raise InvalidArgumentError("matrix must be n x n")
            if not np.array_equal(matrix, matrix.T):
                raise InvalidArgumentError("matrix must be symmetric")
            np.fill_diagonal(matrix, 1.0)
            matrix.flags.writeable = False
        self._func = func
        self._matrix = matrix

    @property
    def n(self):
        return self._n

    def query(self, u, v):
        self._check(u, v)
        if u == v:
            return 1.0
        if self._matrix is not None:
            return float(self._matrix[u, v])
        a, b = (u, v) if u < v else (v, u)
        return float(self._func(a, b))

    def similarities(self, u, vs):
        vs = np.asarray(vs, dtype=np.int64)
        if self._matrix is not None:
            return self._matrix[u, vs]
        return np.array([self.query(u, int(v)) for v in vs], dtype=np.float64)
