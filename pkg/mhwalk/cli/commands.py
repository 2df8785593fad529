"""Handlers of the mhwalk commands; each returns a process exit code."""

import argparse
import logging
import time
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from mhwalk.analysis import audit, benchmark, simulation
from mhwalk.analysis.audit import audit_states, sample_states
from mhwalk.analysis.benchmark import DEFAULT_SWEEP_VALUES, BenchConfig, run_benchmark
from mhwalk.analysis.simulation import default_ratio_grid, run_simulation_grid
from mhwalk.engine.config import SamplerKind, WalkConfig
from mhwalk.engine.corpus import write_corpus
from mhwalk.engine.walker import generate_walks
from mhwalk.graph.csr import Graph
from mhwalk.graph.synthetic import parse_synthetic_spec
from mhwalk.models.factory import build_model, load_edge_matrix, parse_metapath
from mhwalk.models.walk_model import WalkModel
from mhwalk.parsers.edge_list import EdgeListOptions, load_edge_list
from mhwalk.parsers.type_files import load_edge_types, load_node_types
from mhwalk.persistence.manifest import RunManifest, write_manifest
from mhwalk.persistence.serializers import GraphSerializer, ModelSerializer, write_csv_rows
from mhwalk.samplers.mh import InitStrategy

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_AUDIT_FAILED = 3


def resolved_flags(args: argparse.Namespace) -> Dict[str, Any]:
    """Every parsed flag, JSON-friendly, without the handler."""
    flags = {}
    for key, value in sorted(vars(args).items()):
        if key == "handler":
            continue
        if isinstance(value, Path):
            value = str(value)
        elif isinstance(value, list):
            value = [str(v) if isinstance(v, Path) else v for v in value]
        flags[key] = value
    return flags


def load_graph(args: argparse.Namespace) -> Graph:
    """Graph from --input or --synthetic, with optional type files applied."""
    if args.synthetic:
        graph = parse_synthetic_spec(args.synthetic, seed=args.seed)
    else:
        options = EdgeListOptions(weighted=args.weighted, symmetrize=args.symmetrize)
        graph = load_edge_list(args.input, options)
    if args.node_types:
        graph = load_node_types(args.node_types, graph)
    if args.edge_types:
        graph = load_edge_types(args.edge_types, graph)
    return graph


def load_model(args: argparse.Namespace, graph: Graph) -> WalkModel:
    metapath = parse_metapath(args.metapath) if args.metapath else None
    edge_matrix: Optional[np.ndarray] = (
        load_edge_matrix(args.edge_matrix) if args.edge_matrix else None
    )
    return build_model(
        args.model, graph, p=args.p, q=args.q, metapath=metapath, edge_matrix=edge_matrix
    )


def init_strategy(args: argparse.Namespace) -> InitStrategy:
    return InitStrategy.from_name(
        args.init, burn_in_steps=args.burn_in_steps, hw_sample_size=args.hw_sample_size
    )


def cmd_walk(args: argparse.Namespace) -> int:
    """Generate a walk corpus with stats sidecar and run manifest."""
    graph = load_graph(args)
    model = load_model(args, graph)
    config = WalkConfig(
        walks_per_node=args.walks_per_node,
        walk_length=args.walk_length,
        threads=args.threads,
        seed=args.seed,
        sampler_kind=SamplerKind(args.sampler),
        init=init_strategy(args),
    )
    corpus = generate_walks(graph, model, config)
    write_corpus(corpus, args.output)

    manifest = RunManifest(
        command="walk",
        config=resolved_flags(args),
        graph=GraphSerializer.to_dict(graph),
        model=ModelSerializer.to_dict(model),
        timing={"T_i": corpus.stats.init_seconds, "T_w": corpus.stats.walk_seconds},
        results=corpus.stats.to_dict(),
    )
    write_manifest(manifest, args.output)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    """Audit random states into a CSV closed by a max row; exit 0 iff max KL < --tolerance."""
    graph = load_graph(args)
    model = load_model(args, graph)
    states = sample_states(model, args.states, seed=args.seed)

    started = time.perf_counter()
    report = audit_states(
        model,
        states,
        draws=args.draws,
        seed=args.seed,
        sampler_kind=SamplerKind(args.sampler),
        strategy=init_strategy(args),
        discard=args.discard,
    )
    elapsed = time.perf_counter() - started
    write_csv_rows(args.output, audit.CSV_COLUMNS, report.csv_rows())

    passed = report.passed(args.tolerance)
    manifest = RunManifest(
        command="check",
        config=resolved_flags(args),
        graph=GraphSerializer.to_dict(graph),
        model=ModelSerializer.to_dict(model),
        timing={"T_i": 0.0, "T_w": elapsed},
        results={
            "states": len(report.rows),
            "skipped_states": report.skipped_states,
            "max_kl": report.max_kl,
            "mean_kl": report.mean_kl,
            "high_weight_condition_fraction": report.condition_fraction,
            "passed": passed,
        },
    )
    write_manifest(manifest, args.output)

    if passed:
        logger.info(f"Audit passed: max KL {report.max_kl:.6f} < {args.tolerance}")
        return EXIT_OK
    logger.warning(f"Audit failed: max KL {report.max_kl:.6f} >= {args.tolerance}")
    return EXIT_AUDIT_FAILED


def cmd_simulate(args: argparse.Namespace) -> int:
    """Write the initialization-strategy comparison grid as CSV."""
    ratios = args.ratios or default_ratio_grid(args.n, args.t)
    started = time.perf_counter()
    results = run_simulation_grid(
        args.n,
        args.t,
        ratios=ratios,
        distributions=args.distributions,
        repeats=args.repeats,
        samples_per_run=args.samples_per_run,
        seed=args.seed,
        workers=args.threads,
        coupled=args.coupled,
    )
    elapsed = time.perf_counter() - started
    write_csv_rows(args.output, simulation.CSV_COLUMNS, (r.to_row() for r in results))

    manifest = RunManifest(
        command="simulate",
        config=resolved_flags(args),
        timing={"T_i": 0.0, "T_w": elapsed},
        results={"ratios": list(ratios), "kl_ratio": [r.kl_ratio for r in results]},
    )
    write_manifest(manifest, args.output)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    """Write one CSV row per sampler (and per sweep value)."""
    graph = load_graph(args)
    metapath = parse_metapath(args.metapath) if args.metapath else None
    edge_matrix = load_edge_matrix(args.edge_matrix) if args.edge_matrix else None
    config = BenchConfig(
        samplers=[SamplerKind(name) for name in args.samplers],
        steps=args.steps,
        walk_length=args.walk_length,
        seed=args.seed,
        init=init_strategy(args),
        sweep=args.sweep,
        sweep_values=args.sweep_values or list(DEFAULT_SWEEP_VALUES),
    )
    rows = run_benchmark(
        graph, args.model, config, p=args.p, q=args.q, metapath=metapath, edge_matrix=edge_matrix
    )
    write_csv_rows(args.output, benchmark.CSV_COLUMNS, (row.to_row() for row in rows))

    manifest = RunManifest(
        command="bench",
        config=resolved_flags(args),
        graph=GraphSerializer.to_dict(graph),
        timing={
            "T_i": sum(row.init_seconds for row in rows),
            "T_w": sum(row.seconds for row in rows),
        },
        results={"rows": [row.to_row() for row in rows]},
    )
    write_manifest(manifest, args.output)
    return EXIT_OK


HANDLERS = {
    "walk": cmd_walk,
    "check": cmd_check,
    "simulate": cmd_simulate,
    "bench": cmd_bench,
}
