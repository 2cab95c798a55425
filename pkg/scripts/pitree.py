#!/usr/bin/env python3
"""Build, export and verify pi-trees described by JSON construction terms.

Usage:
    # Export the standard tree to depth 3 as JSON lines
    uv run python scripts/pitree.py build --config standard.json --depth 3

    # Run the Baire foliage suite
    uv run python scripts/pitree.py check --config pipeline.json --suite baire --depth 6

    # Print a truncated rise set
    uv run python scripts/pitree.py rise --config standard.json \\
        --point '{"baire": {"prefix": [], "tail": 0}}' --nbhd '{"cyl": [0, 0]}'
"""

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path
from typing import Any

# Add src to path for development
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from pitree.config import PitreeConfig
from pitree.core.ops import RiseSet, rise
from pitree.core.tree import FoliageTree
from pitree.errors import (
    AlphaNotIncreasing,
    ComponentNotVerified,
    ConfigError,
    DuplicatePoint,
    LambdaTooSmall,
    NotOmegaBranching,
    PointOutsideRoot,
    SerializationError,
    SpaceMismatch,
)
from pitree.export import ExportFormat, export_tree
from pitree.points import space_of
from pitree.symsets import ClopenSet, from_json, normalize, point_from_json
from pitree.symsets.forms import FactorForm, ProductForm
from pitree.terms import load_samples, load_tree
from pitree.verify import (
    ExitCode,
    Report,
    Sample,
    baire_foliage_suite,
    fip_check,
    generate_samples,
    grows_into_suite,
    hybrid_oracle_suite,
    theorem2_suite,
)

logger = logging.getLogger(__name__)

SUITES = ("baire", "grows-into", "fip", "hybrid-oracle", "theorem2")

# Samples drawn when --samples is not given
DEFAULT_SAMPLES = 10

# Random instances checked by the hybrid-oracle suite
ORACLE_INSTANCES = 100

# Errors reported with exit code 2: unreadable input or an invalid construction
CONFIG_ERRORS = (
    ConfigError,
    SerializationError,
    SpaceMismatch,
    PointOutsideRoot,
    LambdaTooSmall,
    AlphaNotIncreasing,
    DuplicatePoint,
    ComponentNotVerified,
    NotOmegaBranching,
)


def setup_logging(level: str, verbose: bool = False) -> None:
    """Configure logging."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, level, logging.WARNING),
        format="%(asctime)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )


def make_config(args: argparse.Namespace) -> PitreeConfig:
    """Environment defaults overridden by command-line flags."""
    config = PitreeConfig()
    overrides = {
        name: getattr(args, name)
        for name in ("depth", "sons", "seed", "workers")
        if getattr(args, name, None) is not None
    }
    return dataclasses.replace(config, **overrides)


def require_tree(args: argparse.Namespace, config: PitreeConfig) -> FoliageTree:
    if args.config is None:
        raise ConfigError(f"{args.command} needs --config")
    return load_tree(args.config, config)


def parse_json_arg(value: str, what: str) -> Any:
    try:
        return json.loads(value)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid {what} JSON: {e}") from e


def set_space(s: ClopenSet) -> str | None:
    """Space tag of a neighborhood, None for the empty set."""
    form = normalize(s)
    if isinstance(form, FactorForm):
        return form.space
    if isinstance(form, ProductForm):
        return "product"
    return None


def format_rise(rise_set: RiseSet) -> str:
    known = ",".join(str(n) for n in rise_set.sorted())
    undecided = ",".join(str(n) for n in sorted(rise_set.undecided))
    return f"known=[{known}] undecided=[{undecided}] unknown_beyond={rise_set.depth}"


def cmd_build(args: argparse.Namespace, config: PitreeConfig) -> int:
    tree = require_tree(args, config)
    text = export_tree(tree, config.depth, config.sons, args.format)
    if args.output:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        args.output.write_text(text, encoding="utf-8")
        logger.info("Wrote %s", args.output)
    else:
        sys.stdout.write(text)
    return ExitCode.OK


def _samples(args: argparse.Namespace, tree: FoliageTree, config: PitreeConfig) -> list[Sample]:
    if args.samples:
        return load_samples(args.samples)
    return generate_samples(tree, DEFAULT_SAMPLES, config.seed)


def run_suite(args: argparse.Namespace, config: PitreeConfig) -> Report:
    if args.suite == "hybrid-oracle":
        return hybrid_oracle_suite(ORACLE_INSTANCES, config.seed)

    tree = require_tree(args, config)
    if args.suite == "baire":
        return baire_foliage_suite(
            tree, config.depth, config.sons, probe=config.probe, workers=config.workers
        )
    if args.suite == "theorem2":
        return theorem2_suite(
            tree,
            config.depth,
            config.sons,
            probe=config.probe,
            workers=config.workers,
            seed=config.seed,
            search_cap=config.search_cap,
        )

    samples = _samples(args, tree, config)
    if args.suite == "grows-into":
        return grows_into_suite(
            tree,
            samples,
            config.depth,
            sons=config.sons,
            search_cap=config.search_cap,
            workers=config.workers,
        )
    rise_sets = [
        rise(
            tree,
            s.point,
            s.nbhd,
            config.depth,
            strict=config.strict_scope,
            sons=config.sons,
            search_cap=config.search_cap,
        )
        for s in samples
    ]
    report = fip_check(rise_sets, f"{len(rise_sets)} sampled rise sets")
    report.tree = tree.description
    report.depth = config.depth
    return report


def cmd_check(args: argparse.Namespace, config: PitreeConfig) -> int:
    report = run_suite(args, config)
    print(report.to_json())
    logger.info(report.summary())
    return report.exit_code


def cmd_rise(args: argparse.Namespace, config: PitreeConfig) -> int:
    tree = require_tree(args, config)
    point = point_from_json(parse_json_arg(args.point, "point"))
    nbhd = from_json(parse_json_arg(args.nbhd, "neighborhood"))
    if space_of(point) != tree.space:
        raise SpaceMismatch(f"{space_of(point)} point given for a {tree.space} tree")
    nbhd_space = set_space(nbhd)
    if nbhd_space not in (None, tree.space):
        raise SpaceMismatch(f"{nbhd_space} neighborhood given for a {tree.space} tree")
    rise_set = rise(
        tree,
        point,
        nbhd,
        config.depth,
        strict=config.strict_scope,
        sons=config.sons,
        search_cap=config.search_cap,
    )
    print(format_rise(rise_set))
    return ExitCode.OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        type=Path,
        help="Construction term (JSON file)",
    )
    common.add_argument(
        "--depth",
        type=int,
        help="Materialization / verification depth (default: PITREE_DEPTH)",
    )
    common.add_argument(
        "--sons",
        type=int,
        help="Explicit son bound per node (default: PITREE_SONS)",
    )
    common.add_argument(
        "--seed",
        type=int,
        help="Seed for samples, oracle instances and faults (default: PITREE_SEED)",
    )
    common.add_argument(
        "-w",
        "--workers",
        type=int,
        help="Thread pool size (default: PITREE_WORKERS)",
    )
    common.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Verbose output",
    )

    parser = argparse.ArgumentParser(
        description="Build, export and verify pi-trees",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s build --config standard.json --depth 3         # JSON lines to stdout
  %(prog)s build --config product.json --format dot -o product.dot  # DOT export
  %(prog)s check --config pipeline.json --suite baire     # Baire foliage suite
  %(prog)s check --config cut.json --suite grows-into --samples samples.json
  %(prog)s check --suite hybrid-oracle --seed 7           # Random finite hybrids
  %(prog)s rise --config standard.json --point P --nbhd U # Truncated rise set

Exit codes:
  0  all checks passed
  1  violation (or runtime failure)
  2  config, parse or space error
  3  inconclusive only

Environment variables:
  PITREE_DEPTH         Default depth (default: 6)
  PITREE_SONS          Explicit son bound N (default: 32)
  PITREE_PROBE         Leading sons expanded per node by suites (default: 2)
  PITREE_WORKERS       Thread pool size (default: 4)
  PITREE_SEED          Random seed (default: 0)
  PITREE_SEARCH_CAP    Cap on linear searches (default: 256)
  PITREE_STRICT_SCOPE  Validate scope uniqueness (default: true)
  PITREE_LOG           Logging level (default: WARNING)
        """,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    build = subparsers.add_parser("build", parents=[common], help="Materialize and export a tree")
    build.add_argument(
        "--format",
        choices=ExportFormat.ALL,
        default=ExportFormat.JSONL,
        help="Output format (default: jsonl)",
    )
    build.add_argument(
        "-o",
        "--output",
        type=Path,
        help="Output file (default: stdout)",
    )

    check = subparsers.add_parser("check", parents=[common], help="Run a verification suite")
    check.add_argument(
        "--suite",
        choices=SUITES,
        default="baire",
        help="Suite to run (default: baire)",
    )
    check.add_argument(
        "--samples",
        type=Path,
        help="JSON list of {point, nbhd} samples (default: generated from --seed)",
    )

    rise_cmd = subparsers.add_parser("rise", parents=[common], help="Print a truncated rise set")
    rise_cmd.add_argument(
        "--point",
        required=True,
        help="Point JSON",
    )
    rise_cmd.add_argument(
        "--nbhd",
        required=True,
        help="Neighborhood JSON (clopen set)",
    )
    return parser


COMMANDS = {"build": cmd_build, "check": cmd_check, "rise": cmd_rise}


def main(argv: list[str] | None = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = make_config(args)
        setup_logging(config.log_level, args.verbose)
        return COMMANDS[args.command](args, config)
    except CONFIG_ERRORS as e:
        logging.error("Error: %s", e)
        if args.verbose:
            raise
        return ExitCode.CONFIG
    except Exception as e:
        logging.error("Error: %s", e)
        if args.verbose:
            raise
        return ExitCode.VIOLATION


if __name__ == "__main__":
    sys.exit(main())
