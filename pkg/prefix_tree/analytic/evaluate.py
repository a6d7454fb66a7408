import math

from ..bloom import bloom_bits, bloom_fp, optimal_k
from .depth import (
    EXACT,
    Evaluated,
    avg_depth,
    avg_depth_recurrence,
    degree1_count,
    expected_leaves,
    internal_nodes_at_depth,
    leaf_depth_pmf,
    m_node_count,
)
from .entropy import (
    min_depth_entropy,
    min_depth_entropy_any,
    reduced_entropy,
    reduced_entropy_any,
    tree_entropy,
    tree_entropy_recurrence,
)
from .false_positive import false_positive
from .params import DEFAULT_CONFIG, EvalConfig
from .quantity_data import Quantity
from .split import reduced_split_entropy, split_entropy

__all__ = ("evaluate", "evaluate_any", "realized_bloom_fp")


def realized_bloom_fp(n: int, p_f: float) -> float:
    """False-positive rate of an actual filter sized for p_f."""
    m = math.ceil(bloom_bits(n, p_f))
    return bloom_fp(m, n, optimal_k(m, n))


_exact = {
    Quantity.SplitEntropy: lambda n, d, cfg: split_entropy(n),
    Quantity.ReducedSplitEntropy: lambda n, d, cfg: reduced_split_entropy(n),
    Quantity.TreeEntropy: lambda n, d, cfg: tree_entropy_recurrence(n, cfg),
    Quantity.MinDepthEntropy: min_depth_entropy,
    Quantity.ReducedEntropy: lambda n, d, cfg: reduced_entropy(n, cfg),
    Quantity.AvgDepth: lambda n, d, cfg: avg_depth_recurrence(n, cfg),
    Quantity.LeafDepthPmf: lambda n, d, cfg: leaf_depth_pmf(n, d),
    Quantity.ExpectedLeaves: lambda n, d, cfg: expected_leaves(n, d),
    Quantity.FalsePositive: lambda n, d, cfg: false_positive(n, 0, cfg),
    Quantity.FalsePositiveDepth: false_positive,
    Quantity.MNodeCount: m_node_count,
    Quantity.Degree1Count: lambda n, d, cfg: degree1_count(n, cfg),
    Quantity.InternalNodesAtDepth: lambda n, d, cfg: internal_nodes_at_depth(n, d),
    Quantity.BloomBits: lambda n, d, cfg: bloom_bits(n, false_positive(n, d, cfg)),
    Quantity.BloomFp: lambda n, d, cfg: realized_bloom_fp(n, false_positive(n, d, cfg)),
}

_dispatched = {
    Quantity.TreeEntropy: lambda n, d, cfg: tree_entropy(n, cfg),
    Quantity.MinDepthEntropy: min_depth_entropy_any,
    Quantity.ReducedEntropy: lambda n, d, cfg: reduced_entropy_any(n, cfg),
    Quantity.AvgDepth: lambda n, d, cfg: avg_depth(n, cfg),
}


def evaluate(quantity: Quantity, n: int, d: int = 0, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    return _exact[quantity](n, d, cfg)


def evaluate_any(
    quantity: Quantity, n: int, d: int = 0, cfg: EvalConfig = DEFAULT_CONFIG
) -> Evaluated:
    # recurrences fall back to their closed forms above cfg.n_max_exact
    if (route := _dispatched.get(quantity)) is not None:
        return route(n, d, cfg)
    return Evaluated(evaluate(quantity, n, d, cfg), EXACT)
