"""
Consensus of an ensemble drawn from a graph
===========================================

Running Pivot many times on one graph gives an ensemble of clusterings.
Treating those as input clusterings and clustering them again gives a
consensus partition. Its disagreement with the ensemble can be compared to
that of a single run used as the answer.
"""

import numpy as np

from pivotcc import pivot
from pivotcc.datagen import gen_from_graph
from pivotcc.objective import total_disagreement
from pivotcc.rng import RandomSource
from pivotcc.similarity import GraphAdjacency, LabelOracle, graph_oracle

# two dense blocks joined by a few bridges
rng = np.random.default_rng(0)
n = 60
edges = [(u, v) for u in range(n) for v in range(u + 1, n)
         if (u < 30) == (v < 30) and rng.random() < 0.6]
edges += [(int(rng.integers(30)), int(rng.integers(30, 60))) for _ in range(15)]
adj = GraphAdjacency(n, edges)
print("edges:", adj.n_edges)

single = pivot(graph_oracle(adj), RandomSource(1))
print("one run:", single.n_clusters, "clusters")

ensemble = gen_from_graph(adj, runs=200, rng=RandomSource(2))
consensus = pivot(LabelOracle(ensemble), RandomSource(3))
print("consensus:", consensus.n_clusters, "clusters, sizes",
      np.bincount(consensus.labels).tolist()[:10])
print("disagreement with the ensemble:")
print("  consensus", total_disagreement(consensus, ensemble))
print("  one run  ", total_disagreement(single, ensemble))
