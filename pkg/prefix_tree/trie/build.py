from bisect import bisect_left

from ..errors import DomainError, DuplicateElement, EmptyInput
from ..hashstream import ElementStream
from .node import Kind, Node, PrefixTree, TreeKind

__all__ = (
    "MAX_DEPTH",
    "build_minimal",
    "extend_to_min_depth",
    "reduce",
    "build",
)

MAX_DEPTH = 256


def _sorted_prefixes(streams: list[ElementStream]):
    # preorder leaf order equals the order of the streams' bit strings
    pairs = sorted(((s.prefix(MAX_DEPTH), s) for s in streams), key=lambda p: p[0])
    for (a, stream), (b, _) in zip(pairs, pairs[1:]):
        if a == b:
            raise DuplicateElement(stream.digest, MAX_DEPTH)
    return pairs


def _split(values, lo, hi, depth):
    if hi - lo == 1:
        return Node(1)
    shift = MAX_DEPTH - depth
    # every value in [lo, hi) shares its first `depth` bits
    threshold = ((values[lo] >> shift) << shift) | (1 << (shift - 1))
    mid = bisect_left(values, threshold, lo, hi)
    left = _split(values, lo, mid, depth + 1) if mid > lo else None
    right = _split(values, mid, hi, depth + 1) if hi > mid else None
    return Node(hi - lo, left, right)


def build_minimal(streams: list[ElementStream]) -> PrefixTree:
    if not streams:
        raise EmptyInput("Cannot build a prefix tree from zero elements")
    values = [value for value, _ in _sorted_prefixes(streams)]
    return PrefixTree(_split(values, 0, len(values), 0), TreeKind.minimal(), len(values))


def _chain(stream: ElementStream, depth: int, d: int) -> Node:
    node = Node(1)
    for i in range(d - 1, depth - 1, -1):
        node = Node(1, None, node) if stream.bit(i) else Node(1, node, None)
    return node


def _extend(node, depth, d, leaves):
    if node.is_leaf:
        stream = next(leaves)
        return _chain(stream, depth, d) if depth < d else node
    left = _extend(node.left, depth + 1, d, leaves) if node.left else None
    right = _extend(node.right, depth + 1, d, leaves) if node.right else None
    return Node(node.count, left, right)


def extend_to_min_depth(tree: PrefixTree, d: int, streams: list[ElementStream]) -> PrefixTree:
    if tree.kind.kind is not Kind.Minimal:
        raise DomainError(f"Only minimal trees can be extended, got {tree.kind}")
    if d == 0:
        return tree
    kind = TreeKind.min_depth(d)
    leaves = iter(stream for _, stream in _sorted_prefixes(streams))
    return PrefixTree(_extend(tree.root, 0, d, leaves), kind, tree.n)


def _reduce(node):
    if node.is_leaf:
        return node
    if node.degree == 1:
        child = node.left if node.left is not None else node.right
        return Node(node.count, _reduce(child), None, wildcard=True)
    return Node(node.count, _reduce(node.left), _reduce(node.right))


def reduce(tree: PrefixTree) -> PrefixTree:
    if tree.kind.kind is not Kind.Minimal:
        raise DomainError(f"Only minimal trees can be reduced, got {tree.kind}")
    return PrefixTree(_reduce(tree.root), TreeKind.reduced(), tree.n)


def build(streams: list[ElementStream], kind: TreeKind = TreeKind.minimal()) -> PrefixTree:
    tree = build_minimal(streams)
    if kind.kind is Kind.MinDepth:
        return extend_to_min_depth(tree, kind.depth, streams)
    if kind.kind is Kind.Reduced:
        return reduce(tree)
    return tree
