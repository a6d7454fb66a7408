import math
from typing import NamedTuple

import numpy as np
from scipy.special import betainc, digamma

from ..errors import DomainError
from .kernels import (
    LN2,
    binomial_weights,
    check_capacity,
    log_binomial,
    one_minus_pow1m,
    tail_sum,
)
from .params import (
    DEFAULT_APPROX,
    DEFAULT_CONFIG,
    DEPTH_OFFSET,
    LG_E,
    ApproxParams,
    EvalConfig,
)
from .tables import tables_for

__all__ = (
    "EXACT",
    "CLOSED_FORM",
    "Evaluated",
    "avg_depth_recurrence",
    "avg_depth_sum",
    "avg_depth",
    "leaf_depth_pmf",
    "expected_leaves",
    "expected_leaves_recurrence",
    "internal_nodes_at_depth",
    "m_node_count",
    "collision_sum",
    "degree1_count",
    "approx_avg_depth",
    "smooth_avg_depth",
    "approx_avg_depth_oscillating",
    "approx_degree1_count",
    "approx_collision_sum",
)

EXACT = "exact"
CLOSED_FORM = "closed-form"


class Evaluated(NamedTuple):
    value: float
    method: str


def avg_depth_recurrence(n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    check_capacity("D_n", n, cfg, "avg_depth_sum")
    return tables_for(cfg).avg_depth[n]


def avg_depth_sum(n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    """D_n as the sum over depths of P(some other stream shares d bits)."""
    if n < 1:
        raise DomainError(f"D_n needs n >= 1, got {n}")
    if n == 1:
        return 0.0
    return tail_sum(lambda d: one_minus_pow1m(math.ldexp(1.0, -d), n - 1), 0, n, cfg)


def avg_depth(n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> Evaluated:
    if 0 <= n <= cfg.n_max_exact:
        return Evaluated(avg_depth_recurrence(n, cfg), EXACT)
    return Evaluated(avg_depth_sum(n, cfg), CLOSED_FORM)


def leaf_depth_pmf(n: int, d: int) -> float:
    if n < 2 or d < 1:
        raise DomainError(f"l^d_n needs n >= 2 and d >= 1, got n={n}, d={d}")
    a = (n - 1) * math.log1p(-math.ldexp(1.0, -d))
    if d == 1:
        return math.exp(a)
    # (1-2^-d)^(n-1) - (1-2^(1-d))^(n-1) without subtracting two close powers
    b = (n - 1) * math.log1p(-math.ldexp(1.0, 1 - d))
    return -math.exp(a) * math.expm1(b - a)


def expected_leaves(n: int, d: int) -> float:
    if n < 1 or d < 0:
        raise DomainError(f"L^d_n needs n >= 1 and d >= 0, got n={n}, d={d}")
    if n == 1:
        return 1.0 if d == 0 else 0.0
    if d == 0:
        return 0.0
    return n * leaf_depth_pmf(n, d)


def expected_leaves_recurrence(n: int, d: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    if n < 1 or d < 0:
        raise DomainError(f"L^d_n needs n >= 1 and d >= 0, got n={n}, d={d}")
    check_capacity("L^d_n", n, cfg, "expected_leaves")
    weights = [binomial_weights(m, m - 1)[1:] for m in range(n + 1)]
    layer = np.zeros(n + 1)
    layer[1] = 1.0
    for _ in range(d):
        prev = layer
        layer = np.zeros(n + 1)
        for m in range(2, n + 1):
            layer[m] = np.dot(weights[m], prev[1 : m + 1])
    return float(layer[n])


def internal_nodes_at_depth(n: int, d: int) -> float:
    if n < 2 or d < 0:
        raise DomainError(f"needs n >= 2 and d >= 0, got n={n}, d={d}")
    # P(Binomial(n, 2^-d) >= 2) is the regularized incomplete beta I_x(2, n-1)
    return math.ldexp(float(betainc(2, n - 1, math.ldexp(1.0, -d))), d)


def m_node_count(n: int, m: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    if n < 2 or not 2 <= m <= n:
        raise DomainError(f"N_n^m needs 2 <= m <= n, got n={n}, m={m}")
    lg_c = log_binomial(n, m)

    def term(d):
        lg_term = d * (1 - m) + lg_c + (n - m) * math.log1p(-math.ldexp(1.0, -d)) / LN2
        return 2.0**lg_term

    return float(n == m) + tail_sum(term, 1, n, cfg)


def collision_sum(n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    # sum over d of n minus the expected number of occupied depth-d prefixes
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    return tail_sum(
        lambda d: n - math.ldexp(one_minus_pow1m(math.ldexp(1.0, -d), n), d), 0, n, cfg
    )


def degree1_count(n: int, cfg: EvalConfig = DEFAULT_CONFIG) -> float:
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    if n == 1:
        return 0.0
    return n * avg_depth_sum(n, cfg) - collision_sum(n, cfg) - (n - 1)


def approx_avg_depth(n: int, terms: int = 3) -> float:
    """Euler-Maclaurin approximation of D_{n+1}.

    ``terms`` selects how many of the 1/(2n), 1/(12n^2), 1/(120n^4)
    corrections are kept.
    """
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    if not 0 <= terms <= 3:
        raise DomainError(f"terms must be in 0..3, got {terms}")
    corrections = (1 / (2 * n), -1 / (12 * n * n), 1 / (120 * n**4))
    return 0.5 + math.log2(n) + LG_E * (DEFAULT_APPROX.gamma + sum(corrections[:terms]))


def smooth_avg_depth(n: int) -> float:
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    return math.log2(n) + DEPTH_OFFSET - LG_E / (2 * n)


def approx_avg_depth_oscillating(n: int, p: ApproxParams = DEFAULT_APPROX) -> float:
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    lg_n = math.log2(n)
    return (
        lg_n
        + (p.alpha - LG_E)
        - LG_E / (2 * n)
        + p.epsilon * math.sin(2 * math.pi * lg_n + p.delta)
    )


def approx_degree1_count(n: int) -> float:
    return n * math.log2(math.e / 2)


def approx_collision_sum(n: int) -> float:
    if n < 1:
        raise DomainError(f"needs n >= 1, got {n}")
    harmonic = float(digamma(n)) + DEFAULT_APPROX.gamma
    return n / 2 + LG_E * (n * harmonic - n + 1) - math.log2(math.e / 2)
