from functools import partial
from typing import NamedTuple

import numpy as np

from ..errors import DomainError
from ..simulate import random_tree, run_trials
from ..trie import TreeKind
from .tree_codec import encode_measured

__all__ = ("RateStats", "measure_rate")


class RateStats(NamedTuple):
    n: int
    trials: int
    mean_bits: float
    std_bits: float
    mean_model_bits: float

    @property
    def bits_per_element(self) -> float:
        return self.mean_bits / self.n


def _rate_trial(seed, n, kind, scale_bits, key):
    encoded, encoder = encode_measured(random_tree(n, kind, seed, key), scale_bits)
    return encoded.payload_bits, encoder.cost_bits


def measure_rate(
    n: int,
    kind: TreeKind,
    trials: int,
    rng_seed,
    scale_bits: int = 16,
    workers: int = 1,
    key: int = 0,
) -> RateStats:
    """Payload size statistics over `trials` random trees."""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    fn = partial(_rate_trial, n=n, kind=kind, scale_bits=scale_bits, key=key)
    results = np.array(run_trials(fn, rng_seed, trials, workers), dtype=np.float64)
    payload, model = results[:, 0], results[:, 1]
    std = float(payload.std(ddof=1)) if trials > 1 else 0.0
    return RateStats(n, trials, float(payload.mean()), std, float(model.mean()))
