"""Command-line argument parser for the four mhwalk commands."""

import argparse
from pathlib import Path
from typing import Callable, Optional

from mhwalk import __version__
from mhwalk.config.settings import SettingsManager, get_settings
from mhwalk.engine.config import SamplerKind
from mhwalk.models.walk_model import ModelKind
from mhwalk.samplers.mh import InitKind

MODEL_CHOICES = [kind.value for kind in ModelKind]
SAMPLER_CHOICES = [kind.value for kind in SamplerKind]
INIT_CHOICES = [kind.value.replace("_", "-") for kind in InitKind]


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _add_graph_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", type=Path, help="Edge-list file (src dst [weight] per line)")
    source.add_argument(
        "--synthetic",
        metavar="SPEC",
        help="Generated graph: star:L, gnm:N:M, ba:N:A, typed:N:M:T or blogcatalog",
    )
    parser.add_argument("--weighted", action="store_true", help="Read the third column as weight")
    parser.add_argument(
        "--symmetrize", action="store_true", help="Add the reverse of every arc"
    )
    parser.add_argument("--node-types", type=Path, help="File of 'node type' lines")
    parser.add_argument("--edge-types", type=Path, help="File of 'src dst type' lines")


def _add_model_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=MODEL_CHOICES, default="deepwalk")
    parser.add_argument("--p", type=_positive_float, default=1.0, help="Return parameter")
    parser.add_argument("--q", type=_positive_float, default=1.0, help="In-out parameter")
    parser.add_argument("--metapath", help="Comma-separated node types, e.g. 0,1,0")
    parser.add_argument("--edge-matrix", type=Path, help="CSV edge-type transition matrix")


def _add_init_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--init", choices=INIT_CHOICES, default="high-weight")
    parser.add_argument("--burn-in-steps", type=_positive_int, default=100)
    parser.add_argument("--hw-sample-size", type=_positive_int, default=32)


def build_parser(
    settings: Optional[SettingsManager] = None,
    handlers: Optional[dict] = None,
) -> argparse.ArgumentParser:
    """Create the argument parser.

    Args:
        settings: Source of --threads and --seed defaults (global settings when omitted)
        handlers: Command name to handler; each subparser stores its handler as ``handler``

    Returns:
        Configured parser
    """
    settings = settings or get_settings()
    handlers = handlers or {}

    parser = argparse.ArgumentParser(
        prog="mhwalk",
        description="Random-walk corpus generation with Metropolis-Hastings edge sampling",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log debug messages")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Log warnings only")

    commands = parser.add_subparsers(dest="command", required=True)

    def add_command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text, description=help_text)
        handler: Optional[Callable] = handlers.get(name)
        if handler is not None:
            sub.set_defaults(handler=handler)
        sub.add_argument(
            "--seed", type=_non_negative_int, default=settings.seed, help="Random seed"
        )
        sub.add_argument("--output", type=Path, required=True, help="Output file")
        return sub

    walk = add_command("walk", "Generate a walk corpus")
    _add_graph_arguments(walk)
    _add_model_arguments(walk)
    walk.add_argument("--walks-per-node", type=_positive_int, default=10)
    walk.add_argument("--walk-length", type=_positive_int, default=80, help="Steps per walk")
    walk.add_argument("--sampler", choices=SAMPLER_CHOICES, default="mh")
    _add_init_arguments(walk)
    walk.add_argument("--threads", type=_positive_int, default=settings.threads)

    check = add_command("check", "Audit sampler output against exact transition distributions")
    _add_graph_arguments(check)
    _add_model_arguments(check)
    check.add_argument("--states", type=_positive_int, default=20, help="Random states to audit")
    check.add_argument("--draws", type=_positive_int, default=10_000, help="Draws per state")
    check.add_argument(
        "--discard", type=_non_negative_int, default=0, help="Draws discarded per state"
    )
    check.add_argument("--tolerance", type=float, default=0.01, help="Maximum KL to pass")
    check.add_argument("--sampler", choices=SAMPLER_CHOICES, default="mh")
    _add_init_arguments(check)

    simulate = add_command("simulate", "Compare random and high-weight initialization")
    simulate.add_argument("--n", type=_positive_int, default=1000, help="Support size")
    simulate.add_argument("--t", type=_positive_int, default=200, help="Maximal entries")
    simulate.add_argument(
        "--ratios", type=float, nargs="+", help="pi_max/pi_min values (default grid when omitted)"
    )
    simulate.add_argument("--distributions", type=_positive_int, default=1000)
    simulate.add_argument("--repeats", type=_positive_int, default=20)
    simulate.add_argument(
        "--samples-per-run", type=_positive_int, help="Draws per run (default 5n)"
    )
    simulate.add_argument(
        "--coupled",
        action="store_true",
        help="Share random numbers between the two strategies",
    )
    simulate.add_argument("--threads", type=_positive_int, default=settings.threads)

    bench = add_command("bench", "Measure sampler throughput, acceptance and memory")
    _add_graph_arguments(bench)
    _add_model_arguments(bench)
    bench.add_argument(
        "--samplers", choices=SAMPLER_CHOICES, nargs="+", default=list(SAMPLER_CHOICES)
    )
    bench.add_argument("--steps", type=_positive_int, default=100_000)
    bench.add_argument("--walk-length", type=_positive_int, default=80)
    bench.add_argument("--sweep", choices=["p", "q"], help="Sweep p or q")
    bench.add_argument("--sweep-values", type=_positive_float, nargs="+")
    _add_init_arguments(bench)

    return parser
