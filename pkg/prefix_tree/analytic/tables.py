import threading

import numpy as np

from .kernels import binomial_weights
from .params import EvalConfig
from .split import reduced_split_entropy, split_entropy

__all__ = ("RecurrenceTables", "tables_for")


class _Sequence:
    """A memoized sequence x_0, x_1, ... filled by a step function.

    Only the filled prefix is ever read; extension happens under a lock and the
    new prefix length is published after the values are written.
    """

    def __init__(self, initial, step):
        self._values = np.array(initial, dtype=np.float64)
        self._filled = len(initial)
        self._step = step
        self._lock = threading.Lock()

    def __getitem__(self, n: int) -> float:
        if n >= self._filled:
            self._extend(n)
        return float(self._values[n])

    def prefix(self, n: int) -> np.ndarray:
        if n >= self._filled:
            self._extend(n)
        return self._values[: n + 1]

    def _extend(self, n: int):
        with self._lock:
            filled = self._filled
            if n < filled:
                return
            values = self._values
            if n >= len(values):
                values = np.zeros(max(n + 1, 2 * len(values)))
                values[:filled] = self._values[:filled]
            for m in range(filled, n + 1):
                values[m] = self._step(m, values)
            self._values = values
            self._filled = n + 1


def _entropy_step(split):
    # x_n = (s_n + sum_{k<n} C(n,k)/2^(n-1) x_k) / (1 - 2^(1-n))
    def step(m, values):
        weights = binomial_weights(m, m - 1)[:m]
        return (split(m) + np.dot(weights, values[:m])) / (1.0 - 2.0 ** (1 - m))

    return step


def _depth_step(m, values):
    # D_n = (1 + sum_{k=2}^{n-1} C(n-1,k-1)/2^(n-1) D_k) / (1 - 2^(1-n))
    weights = binomial_weights(m - 1, m - 1)[1 : m - 1]
    return (1.0 + np.dot(weights, values[2:m])) / (1.0 - 2.0 ** (1 - m))


class _MinDepthTable:
    """Layers H^0..H^d over n = 0..N, rebuilt when (N, d) grows."""

    def __init__(self, entropy: _Sequence, n_cap: int):
        self._entropy = entropy
        self._n_cap = n_cap
        self._state = (1, 0, [entropy.prefix(1).copy()])
        self._lock = threading.Lock()

    def get(self, n: int, d: int) -> float:
        size, depth, layers = self._state
        if n > size or d > depth:
            with self._lock:
                size, depth, layers = self._state
                if n > size or d > depth:
                    size = min(max(n, 2 * size), self._n_cap) if n > size else size
                    depth = max(d, depth)
                    layers = self._rebuild(size, depth)
                    self._state = (size, depth, layers)
        return float(layers[d][n])

    def _rebuild(self, size, depth):
        layers = [self._entropy.prefix(size).copy()]
        layers += [np.zeros(size + 1) for _ in range(depth)]
        for j in range(1, depth + 1):
            # a lone sequence costs one bit per level down to depth j
            layers[j][1] = j
        for m in range(2, size + 1):
            weights = binomial_weights(m, m - 1)[1:]
            h = split_entropy(m)
            for j in range(1, depth + 1):
                layers[j][m] = h + np.dot(weights, layers[j - 1][1 : m + 1])
        return layers


class RecurrenceTables:
    def __init__(self, cfg: EvalConfig):
        self.cfg = cfg
        self.entropy = _Sequence([0.0, 0.0], _entropy_step(split_entropy))
        self.reduced_entropy = _Sequence([0.0, 0.0], _entropy_step(reduced_split_entropy))
        self.avg_depth = _Sequence([0.0, 0.0], _depth_step)
        self.min_depth = _MinDepthTable(self.entropy, cfg.n_max_exact)


_tables: dict[EvalConfig, RecurrenceTables] = {}
_tables_lock = threading.Lock()


def tables_for(cfg: EvalConfig) -> RecurrenceTables:
    if not cfg.memoize:
        return RecurrenceTables(cfg)
    if (tables := _tables.get(cfg)) is not None:
        return tables
    with _tables_lock:
        if (tables := _tables.get(cfg)) is None:
            tables = _tables[cfg] = RecurrenceTables(cfg)
    return tables
