from enum import Enum

from ..errors import DomainError

__all__ = ("Quantity", "QUANTITY_SYMBOLS", "DEPTH_QUANTITIES", "symbol")


class Quantity(Enum):
    SplitEntropy = 0
    ReducedSplitEntropy = 1
    TreeEntropy = 2
    MinDepthEntropy = 3
    ReducedEntropy = 4
    AvgDepth = 5
    LeafDepthPmf = 6
    ExpectedLeaves = 7
    FalsePositive = 8
    FalsePositiveDepth = 9
    MNodeCount = 10
    Degree1Count = 11
    InternalNodesAtDepth = 12
    BloomBits = 13
    BloomFp = 14


QUANTITY_SYMBOLS = {
    Quantity.SplitEntropy: "h_n",
    Quantity.ReducedSplitEntropy: "h'_n",
    Quantity.TreeEntropy: "H_n",
    Quantity.MinDepthEntropy: "H^{d}_n",
    Quantity.ReducedEntropy: "H'_n",
    Quantity.AvgDepth: "D_n",
    Quantity.LeafDepthPmf: "l^{d}_n",
    Quantity.ExpectedLeaves: "L^{d}_n",
    Quantity.FalsePositive: "F_n",
    Quantity.FalsePositiveDepth: "F^{d}_n",
    Quantity.MNodeCount: "N_n^{d}",
    Quantity.Degree1Count: "deg1_n",
    Quantity.InternalNodesAtDepth: "I^{d}_n",
    Quantity.BloomBits: "B_n(F^{d}_n)",
    Quantity.BloomFp: "p_f(F^{d}_n)",
}

# quantities whose second index is a depth (or m for N_n^m)
DEPTH_QUANTITIES = frozenset(
    (
        Quantity.MinDepthEntropy,
        Quantity.LeafDepthPmf,
        Quantity.ExpectedLeaves,
        Quantity.FalsePositiveDepth,
        Quantity.MNodeCount,
        Quantity.InternalNodesAtDepth,
        Quantity.BloomBits,
        Quantity.BloomFp,
    )
)


def symbol(quantity: Quantity, d: int | None = None) -> str:
    """Row label for a quantity, with the depth filled in where it has one."""
    text = QUANTITY_SYMBOLS[quantity]
    if quantity not in DEPTH_QUANTITIES:
        return text
    if d is None:
        raise DomainError(f"{quantity.name} needs a depth")
    return text.format(d=d)
