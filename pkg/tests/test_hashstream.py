import numpy as np
import pytest

from prefix_tree.errors import DomainError, InputError
from prefix_tree.hashstream import (
    FNV_OFFSET,
    ElementStream,
    block_word,
    block_words,
    digest_element,
    ingest,
    stream_bit,
)


def _vectors(data_dir):
    with open(data_dir / "stream_vectors.txt") as f:
        for line in f:
            if line.startswith("#") or not line.strip():
                continue
            key, digest, index, bit = line.split()
            yield int(key, 16), int(digest, 16), int(index), int(bit)


class TestDigest:
    def test_empty(self):
        assert digest_element(b"") == FNV_OFFSET

    @pytest.mark.parametrize(
        "data, expected",
        [
            (b"a", 0xAF63DC4C8601EC8C),
            (b"abc", 0xE71FA2190541574B),
            (b"foobar", 0x85944171F73967E8),
        ],
    )
    def test_known_values(self, data, expected):
        assert digest_element(data) == expected

    def test_stream_from_text(self):
        assert ElementStream.from_element("a") == ElementStream(0xAF63DC4C8601EC8C, 0)


class TestStreamBits:
    def test_golden_vectors(self, data_dir):
        vectors = list(_vectors(data_dir))
        assert len(vectors) > 50
        for key, digest, index, bit in vectors:
            assert stream_bit(key, digest, index) == bit, (key, digest, index)

    def test_zero_key_zero_digest_first_block(self):
        assert block_word(0, 0, 0) == 0
        # the second block is the first splitmix64 output for seed 0
        assert block_word(0, 0, 1) == 0xE220A8397B1DCDAF

    def test_vectorized_words_match(self):
        digests = [0, 1, 0xAF63DC4C8601EC8C, (1 << 64) - 1]
        for block in range(4):
            expected = [block_word(0x0D0DA203, d, block) for d in digests]
            assert block_words(0x0D0DA203, digests, block).tolist() == expected

    def test_prefix_and_read(self):
        stream = ElementStream(0xE71FA2190541574B, 7)
        bits = [stream.bit(i) for i in range(130)]
        as_int = int("".join(map(str, bits)), 2)
        assert stream.prefix(130) == as_int
        assert stream.prefix(0) == 0
        moved = stream.advance(70)
        assert moved.read(60) == int("".join(map(str, bits[70:130])), 2)
        assert moved.digest == stream.digest

    def test_key_changes_stream(self):
        a = ElementStream(12345, 0).prefix(64)
        b = ElementStream(12345, 1).prefix(64)
        assert a != b

    def test_negative_index(self):
        with pytest.raises(DomainError):
            stream_bit(0, 0, -1)
        with pytest.raises(DomainError):
            ElementStream(0).prefix(-3)

    def test_monobit(self):
        digests = np.arange(1000, dtype=np.uint64) * np.uint64(0x9E3779B9)
        words = np.concatenate([block_words(0, digests, b) for b in range(16)])
        ones = np.unpackbits(words.view(np.uint8)).mean()
        assert abs(ones - 0.5) < 0.002

    def test_bit_pairs_uncorrelated(self):
        digests = np.arange(10000, dtype=np.uint64)
        first, second = block_words(0, digests, 0), block_words(0, digests, 1)

        def column(words, pos):
            return ((words >> np.uint64(63 - pos)) & np.uint64(1)).astype(float)

        for a, b in [(column(first, 0), column(first, 1)), (column(first, 5), column(second, 5))]:
            assert abs(np.corrcoef(a, b)[0, 1]) < 4 / np.sqrt(len(digests))


class TestIngest:
    def test_lines(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_bytes(b"alpha\nbeta\nalpha\n")
        result = ingest([path])
        assert result.labels == ["alpha", "beta", "alpha"]
        assert result.duplicates == 1
        assert [s.digest for s in result.unique()] == [
            digest_element(b"alpha"),
            digest_element(b"beta"),
        ]

    def test_only_newline_is_stripped(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_bytes(b"alpha\r\nalpha\n")
        result = ingest(path)
        assert result.labels == ["alpha\r", "alpha"]
        assert result.duplicates == 0
        assert result.streams[0].digest == digest_element(b"alpha\r")

    def test_last_line_without_newline(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_bytes(b"a\n\nb")
        assert ingest(path).labels == ["a", "", "b"]

    def test_raw_records(self, tmp_path):
        path = tmp_path / "digests.bin"
        path.write_bytes(np.array([5, 1 << 63], dtype="<u8").tobytes())
        result = ingest(path, "raw-u64", key=3)
        assert [s.digest for s in result.streams] == [5, 1 << 63]
        assert all(s.key == 3 for s in result.streams)
        assert result.labels[0] == "0x0000000000000005"

    def test_raw_bad_length(self, tmp_path):
        path = tmp_path / "digests.bin"
        path.write_bytes(b"\x00" * 12)
        with pytest.raises(InputError):
            ingest(path, "raw-u64")

    def test_bad_utf8(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_bytes(b"ok\n\xff\xfe\n")
        with pytest.raises(InputError, match=":2:"):
            ingest(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            ingest(tmp_path / "nope.txt")

    def test_unknown_format(self, tmp_path):
        path = tmp_path / "corpus.txt"
        path.write_text("a\n")
        with pytest.raises(InputError):
            ingest(path, "csv")
