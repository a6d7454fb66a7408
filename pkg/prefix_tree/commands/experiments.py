import math
from functools import partial

import numpy as np

from ..analytic import false_positive, min_depth_entropy_any, tree_entropy
from ..bloom import bloom_bits, bloom_fp, optimal_k
from ..cli import Command, HashTreeCli, format_number, parse_kind
from ..codec import measure_rate
from ..errors import ConfigError
from ..simulate import bloom_fp_trials, fp_trials
from ..trie import Kind
from .codec import analytic_bits

__all__ = ("ExperimentCommands",)

DEFAULT_N = [100]
TRIAL_OPTIONS = ("n", "trials", "seed", "key", "workers", "digits", "out")

FPSIM_HEADER = ["n", "kind", "d", "trials", "probes", "empirical", "std_error", "analytic", "z"]
RATE_HEADER = [
    "n",
    "kind",
    "d",
    "trials",
    "mean_bits",
    "std_bits",
    "mean_model_bits",
    "bits_per_element",
    "analytic_bits",
    "excess_ratio",
]
BLOOMCMP_HEADER = [
    "n",
    "d",
    "tree_bits",
    "bloom_bits",
    "ratio",
    "measured_tree_bits",
    "bloom_m",
    "bloom_k",
    "measured_ratio",
    "bloom_fp",
    "empirical_bloom_fp",
]


def analytic_false_positive(kind, n, cfg):
    if kind.kind is Kind.Reduced:
        return 1.0
    return false_positive(n, kind.depth, cfg)


class ExperimentCommands:
    def __init__(self, cli: HashTreeCli):
        self.cli = cli

        parser = cli.add_command(
            Command.FpSim, self.fpsim, "empirical vs analytic false positives"
        )
        cli.add_options(parser, "kind", "depth", "probes", *TRIAL_OPTIONS)

        parser = cli.add_command(Command.Rate, self.rate, "coded size vs analytic entropy")
        cli.add_options(parser, "kind", "depth", "scale-bits", *TRIAL_OPTIONS)

        parser = cli.add_command(
            Command.BloomCmp, self.bloomcmp, "prefix tree vs Bloom filter memory"
        )
        cli.add_options(parser, "depth", "probes", "scale-bits", *TRIAL_OPTIONS)

    def _kinds(self, args):
        if args.kind != "depth":
            return [parse_kind(args.kind)]
        if not args.depth:
            raise ConfigError("--kind depth needs --depth")
        return [parse_kind("depth", d) for d in args.depth]

    def fpsim(self, args):
        cfg = self.cli.settings.eval_config
        fmt = partial(format_number, digits=args.digits)
        draws = args.trials * args.probes
        with self.cli.csv_writer(args.out) as writer:
            writer.writerow(FPSIM_HEADER)
            for n in args.n or DEFAULT_N:
                for kind in self._kinds(args):
                    rates = fp_trials(
                        n, kind, args.trials, args.probes, args.seed, args.key, args.workers
                    )
                    empirical = float(np.mean(rates))
                    analytic = analytic_false_positive(kind, n, cfg)
                    # binomial error of the pooled rate
                    std_error = math.sqrt(empirical * (1 - empirical) / draws)
                    z = (empirical - analytic) / std_error if std_error > 0 else 0.0
                    writer.writerow(
                        [
                            n,
                            str(kind),
                            kind.depth,
                            args.trials,
                            args.probes,
                            fmt(empirical),
                            fmt(std_error),
                            fmt(analytic),
                            fmt(z),
                        ]
                    )

    def rate(self, args):
        cfg = self.cli.settings.eval_config
        fmt = partial(format_number, digits=args.digits)
        with self.cli.csv_writer(args.out) as writer:
            writer.writerow(RATE_HEADER)
            for n in args.n or DEFAULT_N:
                for kind in self._kinds(args):
                    result = measure_rate(
                        n, kind, args.trials, args.seed, args.scale_bits, args.workers, args.key
                    )
                    bound = analytic_bits(kind, n, cfg)
                    excess = result.mean_bits / bound - 1 if bound > 0 else math.nan
                    writer.writerow(
                        [
                            n,
                            str(kind),
                            kind.depth,
                            args.trials,
                            fmt(result.mean_bits),
                            fmt(result.std_bits),
                            fmt(result.mean_model_bits),
                            fmt(result.bits_per_element),
                            fmt(bound),
                            fmt(excess),
                        ]
                    )

    def bloomcmp(self, args):
        cfg = self.cli.settings.eval_config
        fmt = partial(format_number, digits=args.digits)
        with self.cli.csv_writer(args.out) as writer:
            writer.writerow(BLOOMCMP_HEADER)
            for n in args.n or DEFAULT_N:
                for d in args.depth or [0]:
                    kind = parse_kind("depth", d)
                    if d == 0:
                        tree_bits = tree_entropy(n, cfg).value
                    else:
                        tree_bits = min_depth_entropy_any(n, d, cfg).value
                    p_f = false_positive(n, d, cfg)
                    bits = bloom_bits(n, p_f)
                    m = math.ceil(bits)
                    k = optimal_k(m, n)
                    measured = empirical = math.nan
                    if args.trials > 0:
                        measured = measure_rate(
                            n,
                            kind,
                            args.trials,
                            args.seed,
                            args.scale_bits,
                            args.workers,
                            args.key,
                        ).mean_bits
                        if args.probes > 0:
                            rates = bloom_fp_trials(
                                n, p_f, args.trials, args.probes, args.seed, args.key, args.workers
                            )
                            empirical = float(np.mean(rates))
                    writer.writerow(
                        [
                            n,
                            d,
                            fmt(tree_bits),
                            fmt(bits),
                            fmt(tree_bits / bits),
                            fmt(measured),
                            m,
                            k,
                            fmt(measured / m),
                            fmt(bloom_fp(m, n, k)),
                            fmt(empirical),
                        ]
                    )


def setup(cli: HashTreeCli):
    ExperimentCommands(cli)
