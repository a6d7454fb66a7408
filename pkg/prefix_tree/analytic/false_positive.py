import math

import numpy as np

from ..errors import DomainError
from .kernels import binomial_weights, check_capacity, pow1m, tail_sum
from .params import DEFAULT_CONFIG, EvalConfig

__all__ = ("false_positive", "false_positive_recurrence")


def false_positive(n: int, d_min: int = 0, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """Probability that a random stream reaches a leaf at depth >= d_min.

    d_min = 0 gives F_n for the minimal tree; larger values give F^d_n for the
    minimal depth d tree.
    """
    if n < 1 or d_min < 0:
        raise DomainError(f"F^d_n needs n >= 1 and d >= 0, got n={n}, d={d_min}")
    if n == 1:
        # the lone leaf sits at depth max(d_min, 0)
        return 1.0 if d_min == 0 else math.ldexp(1.0, -d_min)

    def term(d):
        x = math.ldexp(1.0, -d)
        return x * pow1m(x, n - 1)

    return n / 2 * tail_sum(term, max(d_min, 1), n, cfg)


def false_positive_recurrence(n: int, d: int = 0, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    if n < 1 or d < 0:
        raise DomainError(f"F^d_n needs n >= 1 and d >= 0, got n={n}, d={d}")
    check_capacity("F^d_n", n, cfg, "false_positive")
    weights = [binomial_weights(m) for m in range(n + 1)]
    layer = np.zeros(n + 1)
    layer[1] = 1.0
    # F_n = sum_{k=1}^{n-1} C(n,k) F_k / (2^n - 1)
    for m in range(2, n + 1):
        layer[m] = np.dot(weights[m][1:m], layer[1:m]) / (1.0 - 2.0**-m)
    # F^{d+1}_n = sum_{k=1}^{n} C(n,k)/2^n F^d_k
    for _ in range(d):
        prev = layer
        layer = np.zeros(n + 1)
        for m in range(1, n + 1):
            layer[m] = np.dot(weights[m][1:], prev[1 : m + 1])
    return float(layer[n])
