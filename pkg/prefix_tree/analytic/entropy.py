import math

from ..errors import DomainError
from .depth import (
    CLOSED_FORM,
    EXACT,
    Evaluated,
    avg_depth_sum,
    degree1_count,
    expected_leaves,
)
from .kernels import check_capacity, lg_factorial
from .params import DEFAULT_APPROX, DEFAULT_CONFIG, ApproxParams, EvalConfig
from .tables import tables_for

__all__ = (
    "tree_entropy_recurrence",
    "tree_entropy_closed",
    "tree_entropy",
    "min_depth_entropy",
    "min_depth_entropy_closed",
    "min_depth_entropy_any",
    "reduced_entropy",
    "reduced_entropy_closed",
    "reduced_entropy_any",
    "smooth_tree_entropy",
    "approx_tree_entropy",
)


def tree_entropy_recurrence(n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    check_capacity("H_n", n, cfg, "tree_entropy_closed")
    return tables_for(cfg).entropy[n]


def tree_entropy_closed(n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    # H_n + lg(n!) = n D_n
    if n < 1:
        raise DomainError(f"closed-form H_n needs n >= 1, got {n}")
    return n * avg_depth_sum(n, cfg) - lg_factorial(n)


def tree_entropy(n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> Evaluated:
    if 0 <= n <= cfg.n_max_exact:
        return Evaluated(tree_entropy_recurrence(n, cfg), EXACT)
    return Evaluated(tree_entropy_closed(n, cfg), CLOSED_FORM)


def min_depth_entropy(n: int, d: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    if n < 1 or d < 0:
        raise DomainError(f"H^d_n needs n >= 1 and d >= 0, got n={n}, d={d}")
    check_capacity("H^d_n", n, cfg, "min_depth_entropy_closed")
    return tables_for(cfg).min_depth.get(n, d)


def min_depth_entropy_closed(n: int, d: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """H^d_n as H_n plus one bit per extension node.

    A depth d-i leaf grows a chain of i nodes, so the expected extension cost is
    the sum of i * L^(d-i)_n.
    """
    if n < 1 or d < 0:
        raise DomainError(f"H^d_n needs n >= 1 and d >= 0, got n={n}, d={d}")
    extension = sum(i * expected_leaves(n, d - i) for i in range(1, d + 1))
    return tree_entropy_closed(n, cfg) + extension


def min_depth_entropy_any(n: int, d: int, cfg: EvalConfig = DEFAULT_CONFIG) -> Evaluated:
    if n <= cfg.n_max_exact:
        return Evaluated(min_depth_entropy(n, d, cfg), EXACT)
    return Evaluated(min_depth_entropy_closed(n, d, cfg), CLOSED_FORM)


def reduced_entropy(n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    check_capacity("H'_n", n, cfg, "reduced_entropy_closed")
    return tables_for(cfg).reduced_entropy[n]


def reduced_entropy_closed(n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    # each degree-1 node saves exactly one bit
    return tree_entropy_closed(n, cfg) - degree1_count(n, cfg)


def reduced_entropy_any(n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> Evaluated:
    if 0 <= n <= cfg.n_max_exact:
        return Evaluated(reduced_entropy(n, cfg), EXACT)
    return Evaluated(reduced_entropy_closed(n, cfg), CLOSED_FORM)


def smooth_tree_entropy(n: int, p: ApproxParams = DEFAULT_APPROX) -> float:
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    return p.alpha * n - 1 - 0.5 * math.log2(math.e * math.pi / 2) - 0.5 * math.log2(n)


def approx_tree_entropy(n: int, p: ApproxParams = DEFAULT_APPROX) -> float:
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    oscillation = p.epsilon * n * math.sin(2 * math.pi * math.log2(n) + p.delta)
    return smooth_tree_entropy(n, p) + oscillation
