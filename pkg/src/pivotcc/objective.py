"""Exact consensus objectives: disagreement distance and weighted CC cost.

Every value here is an integer pair count. The weighted correlation
clustering cost with label-derived similarities is fractional with
denominator ``k``, so :func:`scaled_weighted_cost` reports ``k`` times it.
"""

from dataclasses import dataclass

import numpy as np

from .core import Clustering, LabelMatrix
from .errors import InvalidArgumentError, SizeError

BRUTE_FORCE_MAX_N = 10


def _dense(labels):
    if isinstance(labels, Clustering):
        return labels.labels
    arr = np.asarray(labels)
    if arr.ndim != 1:
        raise InvalidArgumentError("expected a 1-d label vector")
    return np.unique(arr, return_inverse=True)[1].ravel()


def _pairs(counts):
    counts = np.asarray(counts, dtype=np.int64)
    return int(np.sum(counts * (counts - 1) // 2))


@dataclass(frozen=True)
class ContingencyTable:
    """Sparse overlap counts between two partitions of the same node set.

    ``rows[i], cols[i], counts[i]`` is one non-empty cell.
    """

    rows: np.ndarray
    cols: np.ndarray
    counts: np.ndarray
    row_sums: np.ndarray
    col_sums: np.ndarray

    @property
    def n(self):
        return int(self.counts.sum())


def contingency(a, b):
    """Contingency table of two label vectors of equal length."""
    a = _dense(a)
    b = _dense(b)
    if len(a) != len(b):
        raise InvalidArgumentError(f"length mismatch: {len(a)} vs {len(b)}")
    na = int(a.max()) + 1
    nb = int(b.max()) + 1
    keys = a.astype(np.int64) * nb + b
    if na * nb <= 4 * len(a) + 64:
        tally = np.bincount(keys, minlength=na * nb)
        cells = np.flatnonzero(tally)
        counts = tally[cells]
    else:
        cells, counts = np.unique(keys, return_counts=True)
    return ContingencyTable(
        rows=cells // nb,
        cols=cells % nb,
        counts=counts.astype(np.int64),
        row_sums=np.bincount(a, minlength=na),
        col_sums=np.bincount(b, minlength=nb),
    )


def disagree(c1, c2):
    """Number of node pairs grouped together in exactly one of two clusterings.

    Computed from the contingency table in O(n):
    ``P(c1) + P(c2) - 2 * P_joint`` with ``P`` the co-clustered pair count.
    """
    t = contingency(c1, c2)
    return _pairs(t.row_sums) + _pairs(t.col_sums) - 2 * _pairs(t.counts)


def _check_dims(c, m):
    if len(c) != m.n:
        raise InvalidArgumentError(f"clustering has {len(c)} nodes, matrix has {m.n}")


def total_disagreement(c, m):
    """Sum of :func:`disagree` between ``c`` and each column of ``m``."""
    _check_dims(c, m)
    labels = _dense(c)
    return sum(disagree(labels, m.labels[:, i]) for i in range(m.k))


def match_matrix(m):
    """``M[u, v]`` = number of columns in which ``u`` and ``v`` share a label.

    Θ(n²) memory; test-scale instances only.
    """
    n = m.n
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(m.k):
        col = m.labels[:, i]
        out += col[:, None] == col[None, :]
    return out


def scaled_weighted_cost(c, m):
    """``k`` times the weighted correlation clustering cost of ``c``.

    Intra-cluster pairs pay ``k - matches``, inter-cluster pairs pay
    ``matches``. O(n²k); meant for checking identities on small instances.
    """
    _check_dims(c, m)
    labels = _dense(c)
    M = match_matrix(m)
    iu = np.triu_indices(m.n, 1)
    same = (labels[:, None] == labels[None, :])[iu]
    M = M[iu]
    return int(np.sum(np.where(same, m.k - M, M)))


def set_partitions(n):
    """Yield every set partition of ``0..n-1`` as a restricted growth string."""
    if n == 0:
        yield []
        return
    labels = [0] * n

    def rec(i, top):
        if i == n:
            yield list(labels)
            return
        for j in range(top + 2):
            labels[i] = j
            yield from rec(i + 1, max(top, j))

    yield from rec(1, 0)


def brute_force_optimum(m: LabelMatrix):
    """Minimum-disagreement consensus by exhaustive search.

    Enumerates all Bell(n) partitions, so ``n`` is capped at 10. Returns
    ``(clustering, cost)``; among ties, the first partition in restricted
    growth order wins.
    """
    n = m.n
    if n > BRUTE_FORCE_MAX_N:
        raise SizeError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    M = match_matrix(m)
    # cost = sum of matches over all pairs + sum over intra pairs of (k - 2*matches)
    base = int(np.triu(M, 1).sum())
    W = (m.k - 2 * M).tolist()
    best = [None, None]
    members = []
    labels = [0] * n

    def rec(v, acc):
        if v == n:
            if best[1] is None or acc < best[1]:
                best[0] = list(labels)
                best[1] = acc
            return
        Wv = W[v]
        for j, group in enumerate(members):
            labels[v] = j
            group.append(v)
            rec(v + 1, acc + sum(Wv[u] for u in group[:-1]))
            group.pop()
        labels[v] = len(members)
        members.append([v])
        rec(v + 1, acc)
        members.pop()

    rec(0, 0)
    return Clustering._trusted(np.array(best[0])), base + best[1]
