from pathlib import Path
from typing import NamedTuple

import pytest

DATA_DIR = Path(__file__).parent / "data"


class BitStream(NamedTuple):
    """A hand-written stream: the given bits followed by zeros."""

    bits: str
    digest: int = 0

    def bit(self, i):
        return int(self.bits[i]) if i < len(self.bits) else 0

    def prefix(self, d):
        padded = (self.bits + "0" * d)[:d]
        return int(padded, 2) if d else 0


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def three_streams():
    return [BitStream("0", 1), BitStream("10", 2), BitStream("11", 3)]
