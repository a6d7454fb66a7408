from collections import Counter
from enum import Enum
from typing import NamedTuple

import numpy as np

from ..errors import DomainError
from ..hashstream import ElementStream, block_words
from .node import PrefixTree, TreeStats

__all__ = (
    "Verdict",
    "FlatTree",
    "query",
    "stats",
    "leaf_depths",
    "flatten",
    "simulate_false_positive",
)

PROBE_CHUNK = 1 << 20


class Verdict(Enum):
    PresentOrFalsePositive = 0
    DefinitelyAbsent = 1


class FlatTree(NamedTuple):
    # preorder node arrays, -1 marks a missing child
    left: np.ndarray
    right: np.ndarray
    leaf: np.ndarray
    wildcard: np.ndarray


def query(tree: PrefixTree, stream: ElementStream) -> Verdict:
    node, depth = tree.root, 0
    while not node.is_leaf:
        if node.wildcard:
            node = node.left
        else:
            node = node.right if stream.bit(depth) else node.left
            if node is None:
                return Verdict.DefinitelyAbsent
        depth += 1
    return Verdict.PresentOrFalsePositive


def _walk(tree: PrefixTree):
    # preorder (node, depth) pairs without recursion
    stack = [(tree.root, 0)]
    while stack:
        node, depth = stack.pop()
        yield node, depth
        if node.right is not None:
            stack.append((node.right, depth + 1))
        if node.left is not None:
            stack.append((node.left, depth + 1))


def leaf_depths(tree: PrefixTree) -> list[int]:
    return [depth for node, depth in _walk(tree) if node.is_leaf]


def stats(tree: PrefixTree) -> TreeStats:
    histogram = Counter()
    degree1 = degree2 = total = extension = 0
    for node, depth in _walk(tree):
        total += 1
        if node.is_leaf:
            histogram[depth] += 1
        elif node.degree == 2:
            degree2 += 1
        elif node.count == 1:
            extension += 1
        else:
            degree1 += 1
    leaves = sum(histogram.values())
    avg_depth = sum(d * c for d, c in histogram.items()) / leaves
    histogram = dict(sorted(histogram.items()))
    return TreeStats(histogram, avg_depth, degree1, degree2, total, extension)


def flatten(tree: PrefixTree) -> FlatTree:
    left, right, leaf, wildcard = [], [], [], []
    stack = [(tree.root, -1, left)]
    while stack:
        node, parent, side = stack.pop()
        if parent >= 0:
            side[parent] = len(leaf)
        left.append(-1)
        right.append(-1)
        leaf.append(node.is_leaf)
        wildcard.append(node.wildcard)
        if node.right is not None:
            stack.append((node.right, len(leaf) - 1, right))
        if node.left is not None:
            stack.append((node.left, len(leaf) - 1, left))
    return FlatTree(
        np.array(left, dtype=np.int64),
        np.array(right, dtype=np.int64),
        np.array(leaf, dtype=bool),
        np.array(wildcard, dtype=bool),
    )


def _count_hits(flat: FlatTree, digests: np.ndarray, key: int) -> int:
    hits = 0
    current = np.zeros(len(digests), dtype=np.int64)
    depth = 0
    while len(current):
        at_leaf = flat.leaf[current]
        hits += int(np.count_nonzero(at_leaf))
        keep = ~at_leaf
        digests, current = digests[keep], current[keep]
        if depth % 64 == 0:
            words = block_words(key, digests, depth // 64)
        else:
            words = words[keep]
        bits = (words >> np.uint64(63 - depth % 64)) & np.uint64(1)
        step = np.where(bits.astype(bool), flat.right[current], flat.left[current])
        step = np.where(flat.wildcard[current], flat.left[current], step)
        alive = step >= 0
        digests, current, words = digests[alive], step[alive], words[alive]
        depth += 1
    return hits


def simulate_false_positive(
    tree: PrefixTree,
    probes: int,
    rng_seed: int,
    key: int = 0,
    members=None,
) -> float:
    """Fraction of random probe streams that reach a leaf.

    Probes equal to a digest in `members` are dropped and redrawn. Without
    `members` a probe hits a member with probability about n * probes / 2^64.
    """
    if probes < 1:
        raise DomainError(f"probes must be >= 1, got {probes}")
    rng = np.random.default_rng(rng_seed)
    flat = flatten(tree)
    exclude = None if members is None else np.array(sorted(members), dtype=np.uint64)
    hits, remaining = 0, probes
    while remaining:
        size = min(remaining, PROBE_CHUNK)
        digests = rng.integers(0, 2**64 - 1, size=size, dtype=np.uint64, endpoint=True)
        if exclude is not None:
            digests = digests[~np.isin(digests, exclude)]
        hits += _count_hits(flat, digests, key)
        remaining -= len(digests)
    return hits / probes
