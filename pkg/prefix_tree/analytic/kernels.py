import math

import numpy as np
from scipy.special import gammaln

from ..errors import CapacityError, DomainError
from .params import DEFAULT_CONFIG, EvalConfig

__all__ = (
    "LN2",
    "log_binomial",
    "log_binomial_row",
    "binomial_weights",
    "lg_factorial",
    "check_capacity",
    "pow1m",
    "one_minus_pow1m",
    "tail_sum",
)

LN2 = math.log(2)


def log_binomial(n: int, k: int) -> float:
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"lg C(n, k) needs 0 <= k <= n, got n={n}, k={k}")
    return (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)) / LN2


def log_binomial_row(n: int) -> np.ndarray:
    """lg C(n, k) for k = 0..n."""
    k = np.arange(n + 1, dtype=np.float64)
    return (gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)) / LN2


def binomial_weights(n: int, shift: int | None = None) -> np.ndarray:
    # C(n, k) / 2^shift, defaulting to the split pmf C(n, k) / 2^n
    if shift is None:
        shift = n
    return np.exp2(log_binomial_row(n) - shift)


def lg_factorial(n: int) -> float:
    if n < 0:
        raise DomainError(f"lg(n!) needs n >= 0, got {n}")
    return math.lgamma(n + 1) / LN2


def pow1m(x: float, n: float) -> float:
    """(1 - x)^n without cancellation for tiny x."""
    if n == 0:
        return 1.0
    if x >= 1.0:
        return 0.0
    return math.exp(n * math.log1p(-x))


def one_minus_pow1m(x: float, n: float) -> float:
    if n == 0:
        return 0.0
    if x >= 1.0:
        return 1.0
    return -math.expm1(n * math.log1p(-x))


def tail_sum(term, start: int, n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    # the terms are not monotone before the step near d = lg(n)
    knee = math.log2(max(n, 1)) + 10
    total = 0.0
    for d in range(start, start + cfg.max_terms):
        value = term(d)
        total += value
        if d > knee and abs(value) <= cfg.tail_tol * abs(total):
            break
    return total


def check_capacity(quantity: str, n: int, cfg: EvalConfig, fallback: str):
    if n < 0:
        raise DomainError(f"{quantity} needs n >= 0, got {n}")
    if n > cfg.n_max_exact:
        raise CapacityError(quantity, n, cfg.n_max_exact, fallback)
