import argparse
import sys

from libanyon.message_numbers import TRACE_NORMALIZATIONS
from libanyon.version import __version__

# ==================== Command-line argument parsing ===========================

SUBCOMMANDS = {
    "category": ["verify", "info", "dump"],
    "rep": ["build", "check", "apply", "density"],
    "scenario": ["check"],
}


def _common_parser():
    """Options accepted by every command. Defaults are None so --config values can fill them."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--builtin", type=str, help="Builtin category: fibonacci, ising or su2k:<k>")
    common.add_argument("--file", type=str, help="Category file, or model file for contextuality/scenario")
    common.add_argument("--tol", type=float, help="Axiom, relation and unitarity tolerance (default 1e-10)")
    common.add_argument("--lp-tol", dest="lp_tol", type=float, help="Noncontextuality LP tolerance (default 1e-7)")
    common.add_argument(
        "--support-tol", dest="support_tol", type=float, help="Support threshold for the hierarchy (default 1e-9)"
    )
    common.add_argument(
        "--compat-tol", dest="compat_tol", type=float, help="Marginal agreement on overlaps (default 1e-9)"
    )
    common.add_argument(
        "--commute-tol", dest="commute_tol", type=float, help="Commutation-graph edge tolerance (default 1e-8)"
    )
    common.add_argument("--format", type=str, choices=["text", "json"], help="Report format (default text)")
    common.add_argument("--seed", type=int, help="Seed for randomized steps (default 0)")
    common.add_argument("--config", type=str, help="YAML, TOML or JSON file with option defaults")
    common.add_argument("--log-level", dest="log_level", type=str, help="Log level (default INFO)")
    common.add_argument("--log-file", dest="log_file", type=str, help="Write the full log to this file")
    common.add_argument("--output", type=str, help="Output path for category dump")
    return common


def _add_strand_options(parser, repeat_words=False):
    parser.add_argument("-n", type=int, help="Number of strands (leaves)")
    parser.add_argument("--total", type=str, help="Total charge label name (default: the leaf label)")
    parser.add_argument("--leaf", type=str, help="Leaf label name (default: the first non-unit label)")
    if repeat_words:
        parser.add_argument(
            "-w", "--word", dest="words", action="append", help="Braid word of the projector family (repeatable)"
        )
    else:
        parser.add_argument("-w", "--word", dest="word", type=str, help='Braid word, e.g. "s1 s2^-1"')


def build_parser():
    """The ``libanyon`` argument parser with one sub-parser per command."""
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="libanyon",
        description="Braid representations, link invariants and contextuality from modular tensor categories",
    )
    parser.add_argument("--version", action="version", version=f"libanyon {__version__}")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    category = commands.add_parser("category", parents=[common], help="Verify, describe or dump a category")
    category.add_argument("subcommand", choices=SUBCOMMANDS["category"])

    rep = commands.add_parser("rep", parents=[common], help="Braid-group representations")
    rep.add_argument("subcommand", choices=SUBCOMMANDS["rep"])
    _add_strand_options(rep)

    jones = commands.add_parser("jones", parents=[common], help="Jones polynomial at t = exp(2 pi i / 5)")
    _add_strand_options(jones)
    jones.add_argument(
        "--normalization",
        type=str,
        choices=TRACE_NORMALIZATIONS,
        help="Markov trace normalization when a category is given (default unknot)",
    )

    ctx = commands.add_parser("contextuality", parents=[common], help="Contextuality analysis")
    ctx.add_argument(
        "--kcbs-fibonacci",
        dest="kcbs_fibonacci",
        action="store_true",
        default=None,
        help="KCBS pentagon in the Fibonacci fusion space",
    )
    ctx.add_argument(
        "--braiding",
        action="store_true",
        default=None,
        help="Projector family generated by braid words (needs a category source)",
    )
    _add_strand_options(ctx, repeat_words=True)
    ctx.add_argument("--base", type=int, help="Basis vector of the base projector (default 0)")

    scenario = commands.add_parser("scenario", parents=[common], help="Inspect a model file")
    scenario.add_argument("subcommand", choices=SUBCOMMANDS["scenario"])
    return parser


def parse_args(argv=None):
    """
    Parses command-line arguments into a dictionary of option values.

    .. code-block:: python

        from libanyon.tools import parse_args

        options = parse_args(["rep", "build", "--builtin", "fibonacci", "-n", "3", "--total", "tau"])

    Usage errors raise ``SystemExit(2)`` from argparse.

    Example command lines::

        $ libanyon category verify --builtin fibonacci
        $ libanyon rep density --builtin fibonacci -n 4 --total tau
        $ libanyon jones -n 3 -w "s1 s2^-1 s1 s2^-1"
        $ libanyon contextuality --kcbs-fibonacci
        $ libanyon contextuality --braiding --builtin fibonacci -n 4 --total tau -w "" -w s1 -w s2

    Returns
    -------

    options: :obj:`dict`
        Option values keyed by :class:`~libanyon.specs.RunConfig` field
        names; options not given on the command line are ``None``.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(argv)
    return vars(args)
