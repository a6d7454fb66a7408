from enum import Enum
from typing import NamedTuple, Optional

from ..errors import DomainError

__all__ = (
    "Kind",
    "TreeKind",
    "Node",
    "PrefixTree",
    "TreeStats",
)


class Kind(Enum):
    Minimal = 0
    MinDepth = 1
    Reduced = 2


class TreeKind(NamedTuple):
    kind: Kind
    depth: int = 0

    @classmethod
    def minimal(cls):
        return cls(Kind.Minimal)

    @classmethod
    def min_depth(cls, d: int):
        if d < 1:
            raise DomainError(f"MinDepth needs d >= 1, got {d}")
        return cls(Kind.MinDepth, d)

    @classmethod
    def reduced(cls):
        return cls(Kind.Reduced)

    def __str__(self):
        if self.kind is Kind.MinDepth:
            return f"MinDepth({self.depth})"
        return self.kind.name


class Node(NamedTuple):
    # bit 0 goes left; a wildcard keeps its only child on the left
    count: int
    left: Optional["Node"] = None
    right: Optional["Node"] = None
    wildcard: bool = False

    @property
    def is_leaf(self) -> bool:
        return self.left is None and self.right is None

    @property
    def degree(self) -> int:
        return (self.left is not None) + (self.right is not None)


class PrefixTree(NamedTuple):
    root: Node
    kind: TreeKind
    n: int


class TreeStats(NamedTuple):
    leaf_depth_histogram: dict[int, int]
    avg_depth: float
    degree1_nodes: int
    degree2_nodes: int
    total_nodes: int
    # count-1 unary nodes added by the depth extension
    extension_nodes: int = 0
