from pathlib import Path
from typing import NamedTuple

from ..errors import CodecError, DomainError, FormatError, InputError, TruncatedPayload
from ..trie import MAX_DEPTH, Kind, Node, PrefixTree, TreeKind
from .model import DEGREE1, decode_split_bisect, encode_split_bisect
from .range_coder import RangeDecoder, RangeEncoder

__all__ = (
    "MAGIC",
    "VERSION",
    "Header",
    "EncodedTree",
    "encode",
    "encode_measured",
    "decode",
    "read_tree",
    "write_tree",
)

MAGIC = b"HPT1"
VERSION = 1
MAX_SCALE_BITS = 16


def _write_leb128(out: bytearray, value: int):
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return


def _read_leb128(data: bytes, pos: int):
    value = shift = 0
    while True:
        if pos >= len(data):
            raise TruncatedPayload("Header ends inside a varint")
        byte = data[pos]
        pos += 1
        value |= (byte & 0x7F) << shift
        shift += 7
        if not byte & 0x80:
            return value, pos


class Header(NamedTuple):
    kind: TreeKind
    n: int
    scale_bits: int = 16
    version: int = VERSION


class EncodedTree(NamedTuple):
    header: Header
    payload: bytes

    @property
    def payload_bits(self) -> int:
        return 8 * len(self.payload)

    def to_bytes(self) -> bytes:
        header = self.header
        out = bytearray(MAGIC)
        out += bytes((header.version, header.kind.kind.value, header.scale_bits))
        _write_leb128(out, header.n)
        if header.kind.kind is Kind.MinDepth:
            _write_leb128(out, header.kind.depth)
        return bytes(out) + self.payload

    @classmethod
    def from_bytes(cls, data: bytes):
        if len(data) < len(MAGIC) or data[: len(MAGIC)] != MAGIC:
            raise FormatError("Not an HPT1 file: bad magic")
        if len(data) < 7:
            raise TruncatedPayload("Header is truncated")
        version, kind_value, scale_bits = data[4:7]
        if version != VERSION:
            raise FormatError(f"Unsupported format version {version}")
        if kind_value not in {kind.value for kind in Kind}:
            raise FormatError(f"Unknown tree kind {kind_value}")
        if not 1 <= scale_bits <= MAX_SCALE_BITS:
            raise FormatError(f"Unsupported scale_bits {scale_bits}")
        n, pos = _read_leb128(data, 7)
        if n < 1:
            raise FormatError("Tree must hold at least one element")
        kind = TreeKind(Kind(kind_value))
        if kind.kind is Kind.MinDepth:
            d, pos = _read_leb128(data, pos)
            if d < 1:
                raise FormatError("MinDepth tree with depth 0")
            kind = TreeKind.min_depth(d)
        return cls(Header(kind, n, scale_bits, version), bytes(data[pos:]))


def encode_measured(tree: PrefixTree, scale_bits: int):
    if not 1 <= scale_bits <= MAX_SCALE_BITS:
        raise DomainError(f"scale_bits must be in 1..{MAX_SCALE_BITS}, got {scale_bits}")
    kind = tree.kind
    if tree.root.count != tree.n:
        raise CodecError(f"Root count {tree.root.count} does not match n={tree.n}")
    encoder = RangeEncoder(scale_bits)
    half = 1 << (scale_bits - 1)
    stack = [(tree.root, 0)]
    while stack:
        node, depth = stack.pop()
        count = node.count
        if node.is_leaf:
            if count != 1:
                raise CodecError(f"Leaf at depth {depth} holds {count} elements")
            if kind.kind is Kind.MinDepth and depth < kind.depth:
                raise CodecError(f"Leaf at depth {depth} is above the minimum depth {kind.depth}")
            continue
        if count == 1:
            # unary extension node: one uniform bit per level
            if kind.kind is not Kind.MinDepth or depth >= kind.depth or node.degree != 1:
                raise CodecError(f"Unexpected single-element node at depth {depth}")
            child = node.left if node.left is not None else node.right
            if node.wildcard or child.count != 1:
                raise CodecError(f"Broken extension chain at depth {depth}")
            encoder.encode_bit(int(node.right is not None), half)
            stack.append((child, depth + 1))
            continue
        if node.wildcard:
            if kind.kind is not Kind.Reduced or node.right is not None or node.left is None:
                raise CodecError(f"Misplaced wildcard at depth {depth}")
            if node.left.count != count:
                raise CodecError(f"Wildcard child count differs at depth {depth}")
            encode_split_bisect(encoder, count, DEGREE1, kind)
            stack.append((node.left, depth + 1))
            continue
        k = node.left.count if node.left is not None else 0
        rest = node.right.count if node.right is not None else 0
        if k + rest != count:
            raise CodecError(f"Children hold {k + rest} of {count} elements at depth {depth}")
        encode_split_bisect(encoder, count, k, kind)
        if node.right is not None:
            stack.append((node.right, depth + 1))
        if node.left is not None:
            stack.append((node.left, depth + 1))
    header = Header(kind, tree.n, scale_bits)
    return EncodedTree(header, encoder.finish()), encoder


def encode(tree: PrefixTree, scale_bits: int = 16) -> EncodedTree:
    return encode_measured(tree, scale_bits)[0]


def _decode_node(decoder, count, depth, kind):
    if depth > max(MAX_DEPTH, kind.depth):
        raise FormatError(f"Decoded tree is deeper than {max(MAX_DEPTH, kind.depth)}")
    if count == 1:
        if kind.kind is Kind.MinDepth and depth < kind.depth:
            bit = decoder.decode_bit(1 << (decoder.scale_bits - 1))
            child = _decode_node(decoder, 1, depth + 1, kind)
            return Node(1, None, child) if bit else Node(1, child, None)
        return Node(1)
    k = decode_split_bisect(decoder, count, kind)
    if k == DEGREE1:
        return Node(count, _decode_node(decoder, count, depth + 1, kind), None, wildcard=True)
    left = _decode_node(decoder, k, depth + 1, kind) if k else None
    right = _decode_node(decoder, count - k, depth + 1, kind) if count - k else None
    return Node(count, left, right)


def decode(encoded: EncodedTree) -> PrefixTree:
    header = encoded.header
    decoder = RangeDecoder(encoded.payload, header.scale_bits)
    root = _decode_node(decoder, header.n, 0, header.kind)
    return PrefixTree(root, header.kind, header.n)


def write_tree(path, encoded: EncodedTree):
    try:
        Path(path).write_bytes(encoded.to_bytes())
    except OSError as e:
        raise InputError(f"Cannot write {path}: {e.strerror}") from e


def read_tree(path) -> EncodedTree:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e.strerror}") from e
    return EncodedTree.from_bytes(data)
