import math

from ..errors import DomainError, TruncatedPayload

__all__ = ("TOP", "RangeEncoder", "RangeDecoder")

TOP = 1 << 24
RANGE_MASK = (1 << 32) - 1


def _check_weight(w0, scale_bits):
    if not 0 < w0 < 1 << scale_bits:
        raise DomainError(f"weight {w0} outside (0, 2^{scale_bits})")


class RangeEncoder:
    """Binary range coder with a carry cache.

    ``low`` may grow past 32 bits; the overflow is the carry into the bytes
    still held back in the cache.
    """

    def __init__(self, scale_bits: int = 16):
        self.scale_bits = scale_bits
        self.low = 0
        self.range = RANGE_MASK
        self.cache = 0
        self.cache_size = 1
        self.out = bytearray()
        self.decisions = 0
        self.cost_bits = 0.0

    def _shift_low(self):
        if self.low < 0xFF000000 or self.low > RANGE_MASK:
            carry = self.low >> 32
            temp = self.cache
            while True:
                self.out.append((temp + carry) & 0xFF)
                temp = 0xFF
                self.cache_size -= 1
                if self.cache_size == 0:
                    break
            self.cache = (self.low >> 24) & 0xFF
        self.cache_size += 1
        self.low = (self.low & 0x00FFFFFF) << 8

    def encode_bit(self, bit: int, w0: int):
        # w0 / 2^scale_bits is the probability of a 0
        _check_weight(w0, self.scale_bits)
        bound = (self.range >> self.scale_bits) * w0
        if bit:
            self.low += bound
            self.range -= bound
            self.cost_bits -= math.log2(1 - w0 / (1 << self.scale_bits))
        else:
            self.range = bound
            self.cost_bits -= math.log2(w0 / (1 << self.scale_bits))
        self.decisions += 1
        while self.range < TOP:
            self.range <<= 8
            self._shift_low()

    def finish(self) -> bytes:
        if not self.decisions:
            return b""
        for _ in range(5):
            self._shift_low()
        return bytes(self.out)


class RangeDecoder:
    def __init__(self, payload: bytes, scale_bits: int = 16):
        self.payload = payload
        self.scale_bits = scale_bits
        self.pos = 0
        self.code = None
        self.range = RANGE_MASK

    def _next_byte(self):
        if self.pos >= len(self.payload):
            raise TruncatedPayload(f"Payload exhausted after {self.pos} bytes")
        byte = self.payload[self.pos]
        self.pos += 1
        return byte

    def decode_bit(self, w0: int) -> int:
        _check_weight(w0, self.scale_bits)
        if self.code is None:
            # the encoder's first byte is always the empty cache
            self.code = 0
            for _ in range(5):
                self.code = ((self.code << 8) | self._next_byte()) & RANGE_MASK
        bound = (self.range >> self.scale_bits) * w0
        if self.code < bound:
            self.range = bound
            bit = 0
        else:
            self.code -= bound
            self.range -= bound
            bit = 1
        while self.range < TOP:
            self.range <<= 8
            self.code = ((self.code << 8) | self._next_byte()) & RANGE_MASK
        return bit
