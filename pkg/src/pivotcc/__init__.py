"""Consensus clustering with Pivot over on-the-fly label similarities."""

__version__ = "0.1.0"

from .algorithms import (
    batch_pivot,
    best_of,
    inner_local_search,
    local_search_pass,
    pick_random_input,
    pivot,
    pivot_sequential,
    vote,
)
from .bounds import consensus_bound, g, normal_cdf, sampling_error, triangle_gap
from .core import Clustering, LabelMatrix, SimilarityOracle, cluster_sizes, normalize
from .datagen import BinarySpec, gen_correlated_binary, gen_from_graph
from .objective import brute_force_optimum, disagree, scaled_weighted_cost, total_disagreement
from .rng import RandomSource
from .similarity import (
    GraphAdjacency,
    LabelOracle,
    PrecomputedMatrix,
    graph_oracle,
    label_similarity,
    precompute,
    sample_columns,
)
