import sys
from functools import lru_cache
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InputError

__all__ = (
    "FNV_OFFSET",
    "FNV_PRIME",
    "GOLDEN_GAMMA",
    "MASK64",
    "digest_element",
    "finalize",
    "block_word",
    "block_words",
    "stream_bit",
    "ElementStream",
    "IngestResult",
    "ingest",
)

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1

_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def digest_element(data: bytes) -> int:
    # FNV-1a 64
    state = FNV_OFFSET
    for byte in data:
        state = ((state ^ byte) * FNV_PRIME) & MASK64
    return state


def finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


@lru_cache(maxsize=1 << 16)
def block_word(key: int, digest: int, block: int) -> int:
    """The 64 stream bits with indices 64*block .. 64*block + 63, MSB first."""
    return finalize(((key ^ digest) + block * GOLDEN_GAMMA) & MASK64)


def block_words(key: int, digests, block) -> np.ndarray:
    z = np.array(digests, dtype=np.uint64, ndmin=1) ^ np.uint64(key)
    with np.errstate(over="ignore"):
        z = z + np.array(block, dtype=np.uint64) * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))


def stream_bit(key: int, digest: int, i: int) -> int:
    if i < 0:
        raise DomainError(f"bit index must be >= 0, got {i}")
    block, pos = divmod(i, 64)
    return (block_word(key, digest, block) >> (63 - pos)) & 1


def _read_bits(key, digest, start, count):
    value = 0
    i, end = start, start + count
    while i < end:
        block, pos = divmod(i, 64)
        take = min(64 - pos, end - i)
        word = block_word(key, digest, block)
        value = (value << take) | ((word >> (64 - pos - take)) & ((1 << take) - 1))
        i += take
    return value


class ElementStream(NamedTuple):
    digest: int
    key: int = 0
    cursor: int = 0

    @classmethod
    def from_element(cls, data: bytes | str, key: int = 0):
        if isinstance(data, str):
            data = data.encode()
        return cls(digest_element(data), key)

    def bit(self, i: int) -> int:
        return stream_bit(self.key, self.digest, i)

    def prefix(self, d: int) -> int:
        # first d bits as a big-endian integer
        if d < 0:
            raise DomainError(f"prefix length must be >= 0, got {d}")
        return _read_bits(self.key, self.digest, 0, d)

    def read(self, count: int) -> int:
        if count < 0:
            raise DomainError(f"bit count must be >= 0, got {count}")
        return _read_bits(self.key, self.digest, self.cursor, count)

    def advance(self, count: int):
        return self._replace(cursor=self.cursor + count)


class IngestResult(NamedTuple):
    streams: list[ElementStream]
    duplicates: int
    labels: list[str]

    def unique(self) -> list[ElementStream]:
        seen = set()
        streams = []
        for stream in self.streams:
            if stream.digest not in seen:
                seen.add(stream.digest)
                streams.append(stream)
        return streams


def _read_source(source) -> bytes:
    if source == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(source).read_bytes()
    except OSError as e:
        raise InputError(f"Cannot read {source}: {e.strerror}") from e


def _split_lines(data: bytes, source):
    lines = data.split(b"\n")
    if lines[-1] == b"":
        lines.pop()
    for number, line in enumerate(lines, 1):
        try:
            label = line.decode("utf-8")
        except UnicodeDecodeError:
            raise InputError(f"{source}:{number}: not valid UTF-8") from None
        yield line, label


def ingest(sources, fmt: str = "lines", key: int = 0) -> IngestResult:
    if isinstance(sources, (str, Path)):
        sources = [sources]
    digests, labels = [], []
    for source in sources:
        data = _read_source(source)
        if fmt == "lines":
            for line, label in _split_lines(data, source):
                digests.append(digest_element(line))
                labels.append(label)
        elif fmt == "raw-u64":
            if len(data) % 8:
                raise InputError(f"{source}: length {len(data)} is not a multiple of 8")
            # records are taken as already-hashed digests
            for digest in np.frombuffer(data, dtype="<u8").tolist():
                digests.append(digest)
                labels.append(f"{digest:#018x}")
        else:
            raise InputError(f"Unknown input format {fmt!r}")
    streams = [ElementStream(digest, key) for digest in digests]
    return IngestResult(streams, len(digests) - len(set(digests)), labels)
