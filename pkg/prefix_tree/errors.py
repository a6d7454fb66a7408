__all__ = (
    "PrefixTreeError",
    "ConfigError",
    "InputError",
    "EmptyInput",
    "DuplicateElement",
    "DomainError",
    "CapacityError",
    "FormatError",
    "TruncatedPayload",
    "CodecError",
)


class PrefixTreeError(Exception):
    exit_code = 1


class ConfigError(PrefixTreeError, ValueError):
    exit_code = 2


class InputError(PrefixTreeError):
    exit_code = 2


class EmptyInput(InputError):
    pass


class DuplicateElement(InputError):
    def __init__(self, digest: int, depth: int):
        super().__init__(
            f"Two elements share digest {digest:#018x} (identical for {depth} bits)"
        )
        self.digest = digest
        self.depth = depth


class DomainError(PrefixTreeError, ValueError):
    exit_code = 2


class CapacityError(PrefixTreeError):
    exit_code = 4

    def __init__(self, quantity: str, n: int, n_max: int, fallback: str):
        super().__init__(
            f"{quantity} recurrence is capped at n={n_max} (got n={n}), use {fallback}"
        )
        self.n = n
        self.n_max = n_max
        self.fallback = fallback


class FormatError(PrefixTreeError):
    exit_code = 3


class TruncatedPayload(FormatError):
    pass


class CodecError(PrefixTreeError):
    exit_code = 3
