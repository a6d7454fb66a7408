import math

import numpy as np

from ..errors import DomainError
from .kernels import log_binomial_row

__all__ = (
    "split_entropy",
    "reduced_split_entropy",
    "approx_split_entropy",
)


def split_entropy(n: int) -> float:
    """Entropy in bits of how n sequences divide between the two children."""
    if n < 0:
        raise DomainError(f"h_n needs n >= 0, got {n}")
    lg_p = log_binomial_row(n) - n
    return float(-np.dot(np.exp2(lg_p), lg_p)) + 0.0


def reduced_split_entropy(n: int) -> float:
    # both one-sided splits merge into a single degree-1 case
    if n < 1:
        raise DomainError(f"h'_n needs n >= 1, got {n}")
    return split_entropy(n) - 2.0 ** (1 - n)


def approx_split_entropy(n: int) -> float:
    if n < 1:
        raise DomainError(f"Gaussian h_n needs n >= 1, got {n}")
    return 0.5 * math.log2(math.pi * math.e * n / 2)
