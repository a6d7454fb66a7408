from ..analytic import (
    CLOSED_FORM,
    FP_LIMIT,
    Evaluated,
    Quantity,
    approx_avg_depth_oscillating,
    approx_split_entropy,
    approx_tree_entropy,
    avg_depth,
    false_positive,
    lg_factorial,
    min_depth_entropy_any,
    reduced_entropy_any,
    reduced_split_entropy,
    smooth_avg_depth,
    smooth_tree_entropy,
    split_entropy,
    symbol,
    tree_entropy,
)
from ..bloom import bloom_bits
from ..cli import Command, HashTreeCli, format_number, parse_n_range
from ..errors import CapacityError, ConfigError, DomainError

__all__ = ("TableCommands",)

DEFAULT_N = list(range(1, 11))
DEFAULT_DEPTHS = [5, 9, 10, 15, 20]
DEFAULT_RANGE = {"H": "64:4096:1.0905", "D": "1024:65536:1.0905", "F": "5000:100000:1.1"}


def table_rows(depths, cfg):
    """(label, fn(n)) pairs in the printed row order of the reference table."""
    rows = [
        (symbol(Quantity.ReducedSplitEntropy), reduced_split_entropy),
        (symbol(Quantity.SplitEntropy), split_entropy),
        ("~h_n", approx_split_entropy),
        (symbol(Quantity.ReducedEntropy), lambda n: reduced_entropy_any(n, cfg)),
        (symbol(Quantity.TreeEntropy), lambda n: tree_entropy(n, cfg)),
        ("-H_n", approx_tree_entropy),
    ]
    rows += [
        (symbol(Quantity.MinDepthEntropy, d), lambda n, d=d: min_depth_entropy_any(n, d, cfg))
        for d in depths
    ]
    rows += [
        ("lg(n!)", lg_factorial),
        (symbol(Quantity.AvgDepth), lambda n: avg_depth(n, cfg)),
        (symbol(Quantity.FalsePositive), lambda n: false_positive(n, 0, cfg)),
    ]
    rows += [
        (symbol(Quantity.FalsePositiveDepth, d), lambda n, d=d: false_positive(n, d, cfg))
        for d in depths
    ]
    rows += [
        (
            symbol(Quantity.BloomBits, d),
            lambda n, d=d: bloom_bits(n, false_positive(n, d, cfg)),
        )
        for d in depths
    ]
    return rows


def _residuals(quantity, n, cfg):
    """(exact, smooth, oscillating) values of one quantity at n."""
    if quantity == "H":
        return tree_entropy(n, cfg).value, smooth_tree_entropy(n), approx_tree_entropy(n)
    if quantity == "D":
        return avg_depth(n, cfg).value, smooth_avg_depth(n), approx_avg_depth_oscillating(n)
    return false_positive(n, 0, cfg), FP_LIMIT, FP_LIMIT


class TableCommands:
    def __init__(self, cli: HashTreeCli):
        self.cli = cli

        parser = cli.add_command(Command.Table, self.table, "reference table of analytic values")
        cli.add_options(parser, "n", "depth", "out")
        parser.add_argument("--digits", type=int, default=4)

        parser = cli.add_command(
            Command.Oscillation, self.oscillation, "exact minus non-oscillating approximation"
        )
        parser.add_argument("--quantity", choices=("H", "D", "F"), default="H")
        cli.add_options(parser, "n", "n-range", "digits", "out")

    def table(self, args):
        cfg = self.cli.settings.eval_config
        n_list = args.n or DEFAULT_N
        depths = DEFAULT_DEPTHS if args.depth is None else args.depth
        methods = ["exact"] * len(n_list)
        with self.cli.csv_writer(args.out) as writer:
            writer.writerow(["quantity", *n_list])
            for label, fn in table_rows(depths, cfg):
                cells = []
                for i, n in enumerate(n_list):
                    try:
                        value = fn(n)
                    except (DomainError, CapacityError):
                        cells.append("")
                        continue
                    if isinstance(value, Evaluated):
                        if value.method == CLOSED_FORM:
                            methods[i] = CLOSED_FORM
                        value = value.value
                    cells.append(format_number(value, args.digits))
                writer.writerow([label, *cells])
            writer.writerow(["method", *methods])

    def oscillation(self, args):
        cfg = self.cli.settings.eval_config
        if args.n is not None and args.n_range is not None:
            raise ConfigError("Give either --n or --n-range, not both")
        if args.n is not None:
            n_list = args.n
        elif args.n_range is not None:
            n_list = args.n_range
        else:
            n_list = parse_n_range(DEFAULT_RANGE[args.quantity])
        digits = args.digits
        with self.cli.csv_writer(args.out) as writer:
            writer.writerow(["n", "exact", "smooth", "approx", "residual"])
            for n in n_list:
                exact, smooth, approx = _residuals(args.quantity, n, cfg)
                writer.writerow(
                    [
                        n,
                        format_number(exact, digits),
                        format_number(smooth, digits),
                        format_number(approx, digits),
                        format_number(exact - smooth, digits),
                    ]
                )


def setup(cli: HashTreeCli):
    TableCommands(cli)
