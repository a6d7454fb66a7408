import argparse
import contextlib
import csv
import importlib
import math
import sys
from enum import Enum

import attrs

from .analytic import EvalConfig
from .errors import ConfigError, PrefixTreeError
from .trie import TreeKind
from .utils import DEFAULT_SEED, format_error, get_int_from_env, log, parse_int

__all__ = (
    "Command",
    "Settings",
    "HashTreeCli",
    "parse_count",
    "parse_n_list",
    "parse_n_range",
    "parse_kind",
    "format_number",
)


class Command(Enum):
    Table = "table"
    Oscillation = "oscillation"
    Encode = "encode"
    Decode = "decode"
    Query = "query"
    FpSim = "fpsim"
    Rate = "rate"
    BloomCmp = "bloomcmp"


@attrs.frozen
class Settings:
    seed: int = DEFAULT_SEED
    key: int = 0
    scale_bits: int = 16
    workers: int = 1
    n_max_exact: int = 4096
    digits: int = 6

    @classmethod
    def from_env(cls):
        return cls(
            seed=get_int_from_env("PTREE_SEED", DEFAULT_SEED),
            key=get_int_from_env("PTREE_KEY", 0),
            scale_bits=get_int_from_env("PTREE_SCALE_BITS", 16),
            workers=get_int_from_env("PTREE_WORKERS", 1),
            n_max_exact=get_int_from_env("PTREE_N_MAX_EXACT", 4096),
            digits=get_int_from_env("PTREE_DIGITS", 6),
        )

    @property
    def eval_config(self) -> EvalConfig:
        try:
            return EvalConfig(n_max_exact=self.n_max_exact)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Bad PTREE_N_MAX_EXACT: {e}") from None


def parse_count(text: str) -> int:
    # accepts 1000, 0x3e8 and 1e3
    try:
        return parse_int(text)
    except ConfigError:
        try:
            value = float(text)
        except ValueError:
            raise ConfigError(f"Not a count: {text!r}") from None
        if not value.is_integer():
            raise ConfigError(f"Not a whole number: {text!r}")
        return int(value)


def parse_n_list(text: str) -> list[int]:
    return [parse_count(item) for item in text.split(",") if item.strip()]


def parse_n_range(text: str) -> list[int]:
    """lo:hi:step, a geometric progression of distinct integers."""
    try:
        lo, hi, step = text.split(":")
    except ValueError:
        raise ConfigError(f"Expected lo:hi:step, got {text!r}") from None
    lo, hi, step = parse_count(lo), parse_count(hi), float(step)
    if step <= 1:
        raise ConfigError(f"Geometric step must exceed 1, got {step}")
    values = []
    x = float(lo)
    while round(x) <= hi:
        if not values or round(x) != values[-1]:
            values.append(round(x))
        x *= step
    return values


def parse_kind(name: str, d: int = 0) -> TreeKind:
    if name == "minimal" or (name == "depth" and d == 0):
        return TreeKind.minimal()
    if name == "depth":
        return TreeKind.min_depth(d)
    if name == "reduced":
        return TreeKind.reduced()
    raise ConfigError(f"Unknown tree kind {name!r}")


def format_number(value, digits: int) -> str:
    if isinstance(value, int):
        return str(value)
    if math.isfinite(value) and abs(value) >= 10**digits:
        return str(round(value))
    return f"{value:.{digits}g}"


class HashTreeCli:
    def __init__(self, initial_extensions: list[str], settings: Settings | None = None):
        self.initial_extensions = initial_extensions
        self.settings = Settings.from_env() if settings is None else settings
        self.parser = argparse.ArgumentParser(
            prog="prefix-tree",
            description="Build, analyze and compress hash-origin prefix trees.",
        )
        self.subparsers = self.parser.add_subparsers(dest="command", required=True)
        self.handlers = {}
        for extension in self.initial_extensions:
            self.load_extension("prefix_tree.commands." + extension)

    def load_extension(self, name: str):
        module = importlib.import_module(name)
        if (setup := getattr(module, "setup", None)) is None:
            raise ConfigError(f"{name} is not an extension")
        setup(self)

    def add_command(self, command: Command, handler, help: str) -> argparse.ArgumentParser:
        parser = self.subparsers.add_parser(command.value, help=help)
        self.handlers[command] = handler
        return parser

    def add_options(self, parser: argparse.ArgumentParser, *names: str):
        settings = self.settings
        options = {
            "n": (("--n",), dict(type=parse_n_list, help="comma separated element counts")),
            "n-range": (("--n-range",), dict(type=parse_n_range, help="lo:hi:geomstep")),
            "depth": (("--depth",), dict(type=parse_n_list, help="comma separated depths")),
            "kind": (
                ("--kind",),
                dict(choices=("minimal", "depth", "reduced"), default="minimal"),
            ),
            "key": (("--key",), dict(type=parse_int, default=settings.key)),
            "scale-bits": (
                ("--scale-bits",),
                dict(type=int, default=settings.scale_bits, choices=range(1, 17)),
            ),
            "trials": (("--trials",), dict(type=parse_count, default=100)),
            "probes": (("--probes",), dict(type=parse_count, default=100000)),
            "seed": (("--seed",), dict(type=parse_int, default=settings.seed)),
            "workers": (("--workers",), dict(type=int, default=settings.workers)),
            "digits": (("--digits",), dict(type=int, default=settings.digits)),
            "format": (("--format",), dict(choices=("lines", "raw-u64"), default="lines")),
            "out": (("--out",), dict(default="-", help="output path, - for stdout")),
        }
        for name in names:
            flags, kwargs = options[name]
            parser.add_argument(*flags, **kwargs)

    @contextlib.contextmanager
    def open_text_out(self, path: str):
        if path == "-":
            yield sys.stdout
        else:
            with open(path, "w", newline="") as f:
                yield f

    @contextlib.contextmanager
    def csv_writer(self, path: str):
        with self.open_text_out(path) as f:
            yield csv.writer(f, lineterminator="\n")

    def run(self, argv=None) -> int:
        args = self.parser.parse_args(argv)
        command = Command(args.command)
        try:
            self.handlers[command](args)
        except PrefixTreeError as e:
            log(format_error(command.value, e))
            return e.exit_code
        return 0
