import asyncio
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import numpy as np

from .bloom import BloomFilter
from .hashstream import ElementStream
from .trie import PrefixTree, TreeKind, TreeStats, build, simulate_false_positive, stats
from .utils import log

__all__ = (
    "random_digests",
    "random_streams",
    "random_tree",
    "run_trials",
    "census",
    "fp_trials",
    "bloom_fp_trials",
)


def _draw(rng, size):
    return rng.integers(0, 2**64 - 1, size=size, dtype=np.uint64, endpoint=True)


def random_digests(n: int, seed) -> np.ndarray:
    """n distinct uniformly random 64-bit digests."""
    rng = np.random.default_rng(seed)
    digests = np.unique(_draw(rng, n))
    while len(digests) < n:
        digests = np.unique(np.concatenate([digests, _draw(rng, n - len(digests))]))
    return digests


def random_streams(n: int, key: int = 0, seed=None) -> list[ElementStream]:
    return [ElementStream(digest, key) for digest in random_digests(n, seed).tolist()]


def random_tree(n: int, kind: TreeKind, seed, key: int = 0) -> PrefixTree:
    return build(random_streams(n, key, seed), kind)


async def _run_pool(fn, seeds, workers):
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return await asyncio.gather(*(loop.run_in_executor(pool, fn, s) for s in seeds))


def run_trials(fn, seed, trials: int, workers: int = 1) -> list:
    # one SeedSequence child per trial keeps results independent of scheduling
    seeds = np.random.SeedSequence(seed).spawn(trials)
    if workers <= 1:
        return [fn(s) for s in seeds]
    log(f"Running {trials} trials on {workers} workers")
    return list(asyncio.run(_run_pool(fn, seeds, workers)))


def _census_trial(seed, n, kind, key):
    return stats(random_tree(n, kind, seed, key))


def census(
    n: int, kind: TreeKind, trials: int, seed, key: int = 0, workers: int = 1
) -> list[TreeStats]:
    return run_trials(partial(_census_trial, n=n, kind=kind, key=key), seed, trials, workers)


def _fp_trial(seed, n, kind, probes, key):
    tree_seed, probe_seed = seed.spawn(2)
    digests = random_digests(n, tree_seed)
    streams = [ElementStream(digest, key) for digest in digests.tolist()]
    tree = build(streams, kind)
    return simulate_false_positive(tree, probes, probe_seed, key, members=digests)


def fp_trials(
    n: int, kind: TreeKind, trials: int, probes: int, seed, key: int = 0, workers: int = 1
) -> list[float]:
    fn = partial(_fp_trial, n=n, kind=kind, probes=probes, key=key)
    return run_trials(fn, seed, trials, workers)


def _bloom_trial(seed, n, p_f, probes, key):
    member_seed, probe_seed = seed.spawn(2)
    members = random_digests(n, member_seed)
    bloom = BloomFilter.for_false_positive(n, p_f, key)
    bloom.insert_many(members)
    rng = np.random.default_rng(probe_seed)
    hits = checked = 0
    while checked < probes:
        digests = _draw(rng, min(probes - checked, 1 << 20))
        digests = digests[~np.isin(digests, members)]
        hits += int(np.count_nonzero(bloom.contains_many(digests)))
        checked += len(digests)
    return hits / probes


def bloom_fp_trials(
    n: int, p_f: float, trials: int, probes: int, seed, key: int = 0, workers: int = 1
) -> list[float]:
    """Measured false-positive rate of a filter sized for p_f, per trial."""
    fn = partial(_bloom_trial, n=n, p_f=p_f, probes=probes, key=key)
    return run_trials(fn, seed, trials, workers)
