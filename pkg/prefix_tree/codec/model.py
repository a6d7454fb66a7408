import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln, logsumexp

from ..analytic import binomial_weights
from ..errors import CodecError, DomainError
from ..trie import Kind, TreeKind
from .range_coder import RangeDecoder, RangeEncoder

__all__ = (
    "DEGREE1",
    "SplitModel",
    "quantize_probability",
    "quantize_split",
    "bisect_weight",
    "degree1_weight",
    "encode_split_bisect",
    "decode_split_bisect",
    "split_cost_bits",
)

# symbol of a reduced-tree node whose sequences all leave on one side
DEGREE1 = -1


class SplitModel(NamedTuple):
    n: int
    kind: TreeKind
    symbols: tuple[int, ...]
    weights: tuple[int, ...]
    scale_bits: int


def quantize_probability(p: float, scale_bits: int) -> int:
    # round() is half-to-even, identical on both ends
    total = 1 << scale_bits
    return min(max(round(float(p) * total), 1), total - 1)


def _targets(n, kind):
    pmf = binomial_weights(n)
    if kind.kind is Kind.Reduced:
        return (DEGREE1, *range(1, n)), (2.0 ** (1 - n), *pmf[1:n])
    return tuple(range(n + 1)), tuple(pmf)


def quantize_split(n: int, kind: TreeKind, scale_bits: int = 16) -> SplitModel:
    """Largest-remainder quantization of the split pmf to 2^scale_bits."""
    if n < 2:
        raise DomainError(f"split models need n >= 2, got {n}")
    symbols, targets = _targets(n, kind)
    total = 1 << scale_bits
    if len(symbols) > total:
        raise DomainError(f"{len(symbols)} symbols do not fit in 2^{scale_bits}")
    exact = [p * total for p in targets]
    weights = [max(math.floor(x), 1) for x in exact]
    remainders = [x - math.floor(x) for x in exact]
    order = sorted(range(len(weights)), key=lambda i: (-remainders[i], i))
    excess = total - sum(weights)
    for i in order[: max(excess, 0)]:
        weights[i] += 1
    # the floor of 1 can overshoot; take back from the smallest remainders
    while excess < 0:
        for i in reversed(order):
            if excess < 0 and weights[i] > 1:
                weights[i] -= 1
                excess += 1
    return SplitModel(n, kind, symbols, tuple(weights), scale_bits)


@lru_cache(maxsize=64)
def _log_pmf(n):
    k = np.arange(n + 1)
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1) - n * math.log(2)


@lru_cache(maxsize=1 << 16)
def bisect_weight(n: int, lo: int, hi: int, scale_bits: int) -> int:
    """Quantized P(k <= mid | lo <= k <= hi) for the binomial split of n."""
    mid = (lo + hi) // 2
    log_pmf = _log_pmf(n)
    p = math.exp(logsumexp(log_pmf[lo : mid + 1]) - logsumexp(log_pmf[lo : hi + 1]))
    return quantize_probability(p, scale_bits)


def degree1_weight(n: int, scale_bits: int) -> int:
    # 2^(1-n) starves the scale beyond n = scale_bits + 1 and is clamped to 1
    return quantize_probability(2.0 ** (1 - n), scale_bits)


def _decisions(n, k, kind, scale_bits):
    if kind.kind is Kind.Reduced:
        weight = degree1_weight(n, scale_bits)
        if k == DEGREE1:
            yield 0, weight
            return
        if not 1 <= k <= n - 1:
            raise CodecError(f"reduced split {k} of {n} must be in 1..{n - 1}")
        yield 1, weight
        lo, hi = 1, n - 1
    else:
        if not 0 <= k <= n:
            raise CodecError(f"split {k} of {n} must be in 0..{n}")
        lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi) // 2
        bit = int(k > mid)
        yield bit, bisect_weight(n, lo, hi, scale_bits)
        lo, hi = (mid + 1, hi) if bit else (lo, mid)


def encode_split_bisect(encoder: RangeEncoder, n: int, k: int, kind: TreeKind):
    for bit, w0 in _decisions(n, k, kind, encoder.scale_bits):
        encoder.encode_bit(bit, w0)


def decode_split_bisect(decoder: RangeDecoder, n: int, kind: TreeKind) -> int:
    s = decoder.scale_bits
    if kind.kind is Kind.Reduced:
        if decoder.decode_bit(degree1_weight(n, s)) == 0:
            return DEGREE1
        lo, hi = 1, n - 1
    else:
        lo, hi = 0, n
    while lo < hi:
        mid = (lo + hi) // 2
        if decoder.decode_bit(bisect_weight(n, lo, hi, s)):
            lo = mid + 1
        else:
            hi = mid
    return lo


def split_cost_bits(n: int, k: int, kind: TreeKind, scale_bits: int = 16) -> float:
    total = 1 << scale_bits
    return -sum(
        math.log2((w0 if bit == 0 else total - w0) / total)
        for bit, w0 in _decisions(n, k, kind, scale_bits)
    )
