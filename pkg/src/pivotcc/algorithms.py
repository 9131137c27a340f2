"""Correlation clustering algorithms over similarity oracles.

None of these build the similarity graph. Each queries the oracle from one
node to a batch of others, so on a :class:`~pivotcc.similarity.LabelOracle`
memory stays at the size of the label matrix.
"""

from dataclasses import dataclass

import numpy as np

from .core import Clustering, LabelMatrix, SimilarityOracle
from .errors import InvalidArgumentError
from .objective import total_disagreement
from .rng import as_source
from .similarity import oracle_for


def _check_perm(perm, n):
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (n,) or not np.array_equal(np.sort(perm), np.arange(n)):
        raise InvalidArgumentError("order must be a permutation of 0..n-1")
    return perm


def batch_pivot(oracle, order):
    """Pivot with pivots taken as the first unclustered node of ``order``.

    Each round the pivot collects every unclustered ``v`` with
    ``s(pivot, v) >= 1/2``; only (pivot, v) pairs are ever queried.
    """
    oracle = oracle_for(oracle)
    n = oracle.n
    remaining = _check_perm(order, n)
    labels = np.empty(n, dtype=np.int64)
    cid = 0
    while len(remaining):
        p = remaining[0]
        rest = remaining[1:]
        hit = oracle.attaches(p, rest)
        labels[p] = cid
        labels[rest[hit]] = cid
        remaining = rest[~hit]
        cid += 1
    return Clustering(labels)


def pivot(oracle, rng=None):
    """Randomized Pivot.

    Parameters
    ----------
    oracle : SimilarityOracle or LabelMatrix or GraphAdjacency
        Source of similarities.
    rng : RandomSource or int, optional
        Draws the pivot order (a seeded Fisher-Yates shuffle).

    Returns
    -------
    Clustering
    """
    oracle = oracle_for(oracle)
    return batch_pivot(oracle, as_source(rng).permutation(oracle.n))


@dataclass(frozen=True)
class PivotTrace:
    """Result of node-at-a-time Pivot.

    ``labels[v]`` is the creation index of the pivot ``v`` joined (pivots
    carry their own index); ``pivots`` lists pivots in creation order.
    """

    pivots: tuple
    labels: np.ndarray

    @property
    def clustering(self):
        return Clustering(self.labels)


def pivot_sequential(oracle, perm):
    """Node-at-a-time Pivot over a fixed permutation.

    Each incoming node joins the earliest-created pivot it attaches to, or
    becomes a new pivot. Induces the same partition as :func:`batch_pivot`
    on the same order.
    """
    oracle = oracle_for(oracle)
    n = oracle.n
    perm = _check_perm(perm, n)
    pivots = []
    labels = np.empty(n, dtype=np.int64)
    for v in perm:
        if pivots:
            hit = np.flatnonzero(oracle.attaches(v, np.array(pivots)))
            if len(hit):
                labels[v] = hit[0]
                continue
        labels[v] = len(pivots)
        pivots.append(int(v))
    return PivotTrace(tuple(pivots), labels)


def vote(oracle, rng=None):
    """Greedy Vote: join the cluster with the largest positive net similarity.

    Nodes arrive in a random order. For node ``v`` and an existing cluster
    ``C`` the score is ``sum(s(u, v) - 1/2 for u in C)``; ``v`` joins the
    best-scoring cluster when that score is strictly positive (lowest
    cluster index on ties), else opens a new cluster.
    """
    oracle = oracle_for(oracle)
    n = oracle.n
    order = as_source(rng).permutation(n)
    labels = np.empty(n, dtype=np.int64)
    labels[order[0]] = 0
    n_clusters = 1
    for i in range(1, n):
        v = order[i]
        seen = order[:i]
        score = np.bincount(labels[seen], weights=oracle.signed(v, seen), minlength=n_clusters)
        best = int(np.argmax(score))
        if score[best] > 0:
            labels[v] = best
        else:
            labels[v] = n_clusters
            n_clusters += 1
    return Clustering(labels)


def _one_pass(oracle, labels, order, scope_of):
    # Moving v to cluster D costs sum(s) - sum_{u in D, u != v}(2s - 1), so
    # the best target maximizes the signed affinity; a fresh singleton has 0.
    next_id = int(labels.max()) + 1
    for v in order:
        scope = scope_of(v)
        if len(scope) < 2:
            continue
        others = scope[scope != v]
        w = oracle.signed(v, others)
        cand, inv = np.unique(labels[others], return_inverse=True)
        affinity = np.bincount(inv.ravel(), weights=w, minlength=len(cand))
        cur = labels[v]
        pos = np.searchsorted(cand, cur)
        current = affinity[pos] if pos < len(cand) and cand[pos] == cur else 0
        best = int(np.argmax(affinity))
        if affinity[best] >= 0 and affinity[best] > current:
            labels[v] = cand[best]
        elif current < 0:
            labels[v] = next_id
            next_id += 1
    return labels


def local_search_pass(oracle, start, perm):
    """One LocalSearch sweep over all nodes in ``perm`` order.

    Each node moves to the existing cluster or fresh singleton that lowers
    the objective the most, and only on strict improvement, so the result
    never costs more than ``start``.
    """
    oracle = oracle_for(oracle)
    n = oracle.n
    if len(start) != n:
        raise InvalidArgumentError("start clustering size does not match the oracle")
    perm = _check_perm(perm, n)
    labels = np.array(start.labels if isinstance(start, Clustering) else start, dtype=np.int64)
    everyone = np.arange(n)
    return Clustering(_one_pass(oracle, labels, perm, lambda v: everyone))


def inner_local_search(oracle, pivot_result, rng=None):
    """LocalSearch confined to the inside of each input cluster.

    Every cluster of ``pivot_result`` starts as one sub-cluster; a single
    pass (random node order) may move nodes between sub-clusters of the same
    parent or split them off. The output refines ``pivot_result``.
    """
    oracle = oracle_for(oracle)
    n = oracle.n
    if len(pivot_result) != n:
        raise InvalidArgumentError("clustering size does not match the oracle")
    parent = np.asarray(pivot_result.labels, dtype=np.int64)
    order = as_source(rng).permutation(n)
    by_parent = np.argsort(parent, kind="stable")
    splits = np.split(by_parent, np.cumsum(np.bincount(parent))[:-1])
    members = {int(parent[g[0]]): g for g in splits}
    labels = parent.copy()
    # parent ids stay reserved; new sub-clusters get fresh ids
    _one_pass(oracle, labels, order, lambda v: members[int(parent[v])])
    return Clustering(labels)


def pick_random_input(m: LabelMatrix, rng=None):
    """One input clustering chosen uniformly at random."""
    return m.column(as_source(rng).integer(m.k))


def best_of(candidates, m: LabelMatrix):
    """Candidate with the lowest total disagreement against ``m``.

    Ties go to the earliest candidate.
    """
    candidates = list(candidates)
    if not candidates:
        raise InvalidArgumentError("need at least one candidate")
    costs = [total_disagreement(c, m) for c in candidates]
    return candidates[int(np.argmin(costs))]


ALGORITHMS = ("pivot", "pivot+ils", "pivot+ls", "vote", "best-of")


def run_algorithm(name, oracle, rng=None, full=None):
    """Dispatch one of :data:`ALGORITHMS`.

    ``rng`` is split into independent child streams so ``pivot``,
    ``pivot+ils``, ``pivot+ls`` and ``best-of`` share the same Pivot draw for
    the same seed. ``best-of`` needs ``full``, the label matrix candidates
    are judged against; its random input is drawn from it.
    """
    rng = as_source(rng)
    if name == "vote":
        return vote(oracle, rng.spawn(1))
    if name not in ALGORITHMS:
        raise InvalidArgumentError(f"unknown algorithm {name!r}")
    base = pivot(oracle, rng.spawn(1))
    if name == "pivot":
        return base
    if name == "pivot+ils":
        return inner_local_search(oracle, base, rng.spawn(2))
    if name == "pivot+ls":
        return local_search_pass(oracle, base, rng.spawn(2).permutation(oracle_for(oracle).n))
    if full is None:
        raise InvalidArgumentError("best-of needs the full label matrix")
    return best_of([base, pick_random_input(full, rng.spawn(3))], full)
