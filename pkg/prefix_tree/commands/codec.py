import sys
from pathlib import Path

from ..analytic import min_depth_entropy_any, reduced_entropy_any, tree_entropy
from ..cli import Command, HashTreeCli, format_number, parse_kind
from ..codec import EncodedTree, decode, encode, read_tree
from ..errors import ConfigError, InputError
from ..hashstream import ingest
from ..trie import Kind, build, query, stats
from ..utils import log

__all__ = ("CodecCommands",)


def analytic_bits(kind, n, cfg):
    if kind.kind is Kind.MinDepth:
        return min_depth_entropy_any(n, kind.depth, cfg).value
    if kind.kind is Kind.Reduced:
        return reduced_entropy_any(n, cfg).value
    return tree_entropy(n, cfg).value


def _write_bytes(path, data: bytes):
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    try:
        Path(path).write_bytes(data)
    except OSError as e:
        raise InputError(f"Cannot write {path}: {e.strerror}") from e


def _read_encoded(path) -> EncodedTree:
    if path == "-":
        return EncodedTree.from_bytes(sys.stdin.buffer.read())
    return read_tree(path)


class CodecCommands:
    def __init__(self, cli: HashTreeCli):
        self.cli = cli

        parser = cli.add_command(
            Command.Encode, self.encode, "compress a corpus into an HPT1 file"
        )
        parser.add_argument("inputs", nargs="+", help="input files, - for stdin")
        cli.add_options(parser, "kind", "depth", "key", "scale-bits", "format", "out")

        parser = cli.add_command(
            Command.Decode, self.decode, "summarize or re-serialize an HPT1 file"
        )
        parser.add_argument("tree", help="HPT1 file, - for stdin")
        parser.add_argument(
            "--canonical", action="store_true", help="re-encode instead of summarizing"
        )
        cli.add_options(parser, "out")

        parser = cli.add_command(
            Command.Query, self.query, "membership verdicts against an HPT1 file"
        )
        parser.add_argument("tree", help="HPT1 file")
        parser.add_argument("inputs", nargs="+", help="candidate files, - for stdin")
        cli.add_options(parser, "key", "format", "out")

    def encode(self, args):
        if args.kind == "depth" and not args.depth:
            raise ConfigError("--kind depth needs --depth")
        depths = args.depth or [0]
        if len(depths) != 1:
            raise ConfigError("encode takes a single --depth")
        kind = parse_kind(args.kind, depths[0])
        result = ingest(args.inputs, args.format, args.key)
        if result.duplicates:
            log(f"Dropped {result.duplicates} duplicate elements")
        tree = build(result.unique(), kind)
        encoded = encode(tree, args.scale_bits)
        _write_bytes(args.out, encoded.to_bytes())
        bound = analytic_bits(kind, tree.n, self.cli.settings.eval_config)
        log(
            f"Encoded n={tree.n} kind={kind} payload_bits={encoded.payload_bits} "
            f"bits_per_element={encoded.payload_bits / tree.n:.4f} analytic_bits={bound:.1f}"
        )

    def decode(self, args):
        encoded = _read_encoded(args.tree)
        tree = decode(encoded)
        header = encoded.header
        if args.canonical:
            _write_bytes(args.out, encode(tree, header.scale_bits).to_bytes())
            return
        tree_stats = stats(tree)
        digits = self.cli.settings.digits
        with self.cli.csv_writer(args.out) as writer:
            writer.writerow(["field", "value"])
            writer.writerow(["kind", str(header.kind)])
            writer.writerow(["n", header.n])
            writer.writerow(["scale_bits", header.scale_bits])
            writer.writerow(["payload_bits", encoded.payload_bits])
            writer.writerow(["total_nodes", tree_stats.total_nodes])
            writer.writerow(["degree1_nodes", tree_stats.degree1_nodes])
            writer.writerow(["degree2_nodes", tree_stats.degree2_nodes])
            writer.writerow(["extension_nodes", tree_stats.extension_nodes])
            writer.writerow(["avg_depth", format_number(tree_stats.avg_depth, digits)])
            for depth, count in tree_stats.leaf_depth_histogram.items():
                writer.writerow([f"leaves_at_depth_{depth}", count])

    def query(self, args):
        tree = decode(_read_encoded(args.tree))
        result = ingest(args.inputs, args.format, args.key)
        with self.cli.open_text_out(args.out) as out:
            for label, stream in zip(result.labels, result.streams):
                out.write(f"{label}\t{query(tree, stream).name}\n")


def setup(cli: HashTreeCli):
    CodecCommands(cli)
