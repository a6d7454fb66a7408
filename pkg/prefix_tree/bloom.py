import math

import numpy as np
from bitarray.util import zeros

from .errors import DomainError
from .hashstream import block_word, block_words

__all__ = (
    "bloom_fp",
    "bloom_bits",
    "optimal_k",
    "BloomFilter",
)


def bloom_fp(m: int, n: int, k: int) -> float:
    """(1 - (1 - 1/m)^(kn))^k."""
    if m < 1 or n < 1 or k < 1:
        raise DomainError(f"bloom_fp needs m, n, k >= 1, got m={m}, n={n}, k={k}")
    if m == 1:
        return 1.0
    filled = -math.expm1(k * n * math.log1p(-1 / m))
    return filled**k


def bloom_bits(n: int, p_f: float) -> float:
    if not 0 < p_f < 1:
        raise DomainError(f"p_f must be in (0, 1), got {p_f}")
    return -n * math.log2(p_f) / math.log(2)


def optimal_k(m: int, n: int) -> int:
    # the real optimum is (m/n) ln 2, keep whichever neighbour has the lower p_f
    best = m / n * math.log(2)
    candidates = sorted({max(math.floor(best), 1), max(math.ceil(best), 1)})
    return min(candidates, key=lambda k: (bloom_fp(m, n, k), k))


class BloomFilter:
    def __init__(self, m: int, k: int, key: int = 0):
        if m < 1 or k < 1:
            raise DomainError(f"Bloom filter needs m, k >= 1, got m={m}, k={k}")
        self.m = m
        self.k = k
        self.key = key
        self.bits = zeros(m)
        self.n_inserted = 0

    @classmethod
    def for_false_positive(cls, n: int, p_f: float, key: int = 0):
        m = math.ceil(bloom_bits(n, p_f))
        return cls(m, optimal_k(m, n), key)

    def _positions(self, digest):
        # hash index j reuses stream block j of the element
        return [block_word(self.key, digest, j) % self.m for j in range(1, self.k + 1)]

    def insert(self, digest: int):
        for position in self._positions(digest):
            self.bits[position] = 1
        self.n_inserted += 1

    def insert_many(self, digests):
        digests = np.array(digests, dtype=np.uint64, ndmin=1)
        for j in range(1, self.k + 1):
            for position in (block_words(self.key, digests, j) % np.uint64(self.m)).tolist():
                self.bits[position] = 1
        self.n_inserted += len(digests)

    def contains(self, digest: int) -> bool:
        return all(self.bits[position] for position in self._positions(digest))

    def __contains__(self, digest):
        return self.contains(digest)

    def contains_many(self, digests) -> np.ndarray:
        digests = np.array(digests, dtype=np.uint64, ndmin=1)
        table = np.frombuffer(self.bits.unpack(), dtype=np.uint8).astype(bool)
        found = np.ones(len(digests), dtype=bool)
        for j in range(1, self.k + 1):
            positions = block_words(self.key, digests, j) % np.uint64(self.m)
            found &= table[positions.astype(np.int64)]
        return found

    def fill_ratio(self) -> float:
        return self.bits.count() / self.m

    def approx_items(self) -> float:
        x = self.bits.count()
        if x == 0:
            return 0.0
        if x == self.m:
            return math.inf
        return -self.m / self.k * math.log(1 - x / self.m)

    def false_positive_rate(self) -> float:
        return bloom_fp(self.m, max(self.n_inserted, 1), self.k)
