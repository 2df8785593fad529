"""Parallel walk generation.

Every node starts ``walks_per_node`` walkers. The (walk index, start node)
grid is split into contiguous blocks, one per thread; each walker draws from
its own seed-derived stream, so only the shared sampler slots depend on
thread interleaving.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from mhwalk.engine.config import WalkConfig
from mhwalk.engine.corpus import WalkCorpus, WalkStats
from mhwalk.engine.edge_samplers import EdgeSampler, build_edge_sampler
from mhwalk.errors import ModelContractError, SamplerDeadEnd
from mhwalk.graph.csr import Graph
from mhwalk.models.walk_model import WalkModel
from mhwalk.samplers.random_stream import RandomStream

logger = logging.getLogger(__name__)


@dataclass
class _BlockResult:
    walks: List[List[int]] = field(default_factory=list)
    early_terminations: int = 0
    steps: int = 0


def walk_from(
    start: int,
    walk_index: int,
    model: WalkModel,
    sampler: EdgeSampler,
    walk_length: int,
    seed: int,
) -> Optional[Tuple[List[int], bool]]:
    """Run one walker.

    Returns:
        Tuple of (walk, truncated), or None when ``start`` is not a legal start
    """
    state = model.initial_state(start)
    if state is None:
        return None

    graph = model.graph
    stream = RandomStream.for_walker(seed, start, walk_index)
    walk = [start]
    for _ in range(walk_length):
        try:
            edge = sampler.sample(state, stream)
        except SamplerDeadEnd:
            return walk, True
        walk.append(graph.target(edge))
        state = model.update_state(state, edge)
    return walk, False


def _run_block(
    tasks: np.ndarray,
    starts: np.ndarray,
    model: WalkModel,
    sampler: EdgeSampler,
    config: WalkConfig,
) -> _BlockResult:
    result = _BlockResult()
    node_count = starts.shape[0]
    for task in tasks:
        walk_index, position = divmod(int(task), node_count)
        outcome = walk_from(
            int(starts[position]), walk_index, model, sampler, config.walk_length, config.seed
        )
        if outcome is None:
            continue
        walk, truncated = outcome
        result.walks.append(walk)
        result.steps += len(walk) - 1
        result.early_terminations += int(truncated)
    return result


def legal_starts(model: WalkModel) -> Tuple[np.ndarray, int]:
    """Nodes that can start a walk, and how many nodes were skipped."""
    node_count = model.graph.node_count
    starts = np.array(
        [v for v in range(node_count) if model.initial_state(v) is not None], dtype=np.int64
    )
    return starts, node_count - starts.shape[0]


def generate_walks(
    graph: Graph,
    model: WalkModel,
    config: WalkConfig,
    sampler: Optional[EdgeSampler] = None,
) -> WalkCorpus:
    """Generate ``walks_per_node`` walks of up to ``walk_length`` steps from every node.

    Walks that reach a node without a positive-weight candidate end early and
    are counted in the run stats. Metapath2vec nodes whose type does not open
    the metapath are skipped.

    Args:
        graph: Graph the model is bound to
        model: Bound walk model
        config: Run configuration
        sampler: Edge sampler to reuse (built from ``config`` when omitted)

    Returns:
        Corpus of walks plus run stats

    Raises:
        ModelContractError: If ``model`` is bound to another graph
    """
    if model.graph is not graph:
        raise ModelContractError("model is bound to a different graph")
    if sampler is None:
        sampler = build_edge_sampler(
            config.sampler_kind, model, config.init, concurrent=not config.deterministic
        )

    starts, skipped = legal_starts(model)
    if skipped:
        logger.warning(
            f"Skipped {skipped} of {graph.node_count} start nodes whose type does not open "
            f"the metapath"
        )

    tasks = np.arange(config.walks_per_node * starts.shape[0], dtype=np.int64)
    blocks: Sequence[np.ndarray] = np.array_split(tasks, config.threads)
    logger.info(
        f"Generating {tasks.shape[0]} walks of length {config.walk_length} with "
        f"{sampler.kind.value} sampler on {config.threads} thread(s)"
    )

    started = time.perf_counter()
    if config.threads == 1:
        results = [_run_block(tasks, starts, model, sampler, config)]
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as executor:
            futures = [
                executor.submit(_run_block, block, starts, model, sampler, config)
                for block in blocks
            ]
            results = [future.result() for future in futures]
    elapsed = time.perf_counter() - started

    corpus = WalkCorpus()
    for result in results:
        corpus.walks.extend(result.walks)

    init_seconds = sampler.init_seconds
    corpus.stats = WalkStats(
        walks=len(corpus.walks),
        early_terminations=sum(r.early_terminations for r in results),
        skipped_starts=skipped,
        steps=sum(r.steps for r in results),
        walk_length=config.walk_length,
        threads=config.threads,
        sampler=sampler.kind.value,
        init_seconds=init_seconds,
        walk_seconds=max(elapsed - init_seconds, 0.0),
        acceptance_ratio=sampler.acceptance_ratio,
        aux_bytes=sampler.auxiliary_bytes(),
    )
    if corpus.stats.early_terminations:
        logger.warning(f"{corpus.stats.early_terminations} walks ended early at dead ends")
    logger.info(
        f"Generated {corpus.stats.walks} walks, {corpus.stats.steps} steps "
        f"({corpus.stats.steps_per_sec:.0f} steps/sec)"
    )
    return corpus
