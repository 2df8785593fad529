"""Throughput, acceptance ratio and memory of the edge samplers."""

import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from mhwalk.engine.config import SamplerKind
from mhwalk.engine.edge_samplers import build_edge_sampler
from mhwalk.engine.walker import legal_starts, walk_from
from mhwalk.graph.csr import Graph
from mhwalk.models.factory import build_model
from mhwalk.models.walk_model import ModelKind
from mhwalk.samplers.mh import InitStrategy

logger = logging.getLogger(__name__)

#: Values of p or q visited by a sensitivity sweep
DEFAULT_SWEEP_VALUES = [0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0]

CSV_COLUMNS = [
    "sampler",
    "model",
    "p",
    "q",
    "steps",
    "seconds",
    "init_seconds",
    "steps_per_sec",
    "acceptance_ratio",
    "aux_bytes",
]


@dataclass
class BenchConfig:
    """What to measure and for how long."""
    samplers: List[SamplerKind] = field(default_factory=lambda: list(SamplerKind))
    steps: int = 100_000
    walk_length: int = 80
    seed: int = 0
    init: InitStrategy = field(default_factory=InitStrategy)
    sweep: Optional[str] = None  # "p" or "q"
    sweep_values: List[float] = field(default_factory=lambda: list(DEFAULT_SWEEP_VALUES))

    def __post_init__(self) -> None:
        self.samplers = [SamplerKind(kind) for kind in self.samplers]
        if not self.samplers:
            raise ValueError("at least one sampler is required")
        if self.steps < 1 or self.walk_length < 1:
            raise ValueError("steps and walk_length must be >= 1")
        if self.sweep not in (None, "p", "q"):
            raise ValueError(f"sweep must be 'p' or 'q', got {self.sweep!r}")
        if self.sweep and not self.sweep_values:
            raise ValueError("a sweep needs at least one value")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "samplers": [kind.value for kind in self.samplers],
            "steps": self.steps,
            "walk_length": self.walk_length,
            "seed": self.seed,
            "init": self.init.to_dict(),
            "sweep": self.sweep,
            "sweep_values": list(self.sweep_values),
        }


@dataclass
class BenchRow:
    """Measurements of one sampler under one parameter setting."""
    sampler: str
    model: str
    p: float
    q: float
    steps: int
    seconds: float
    init_seconds: float
    acceptance_ratio: float
    aux_bytes: int

    @property
    def steps_per_sec(self) -> float:
        return self.steps / self.seconds if self.seconds > 0 else 0.0

    def to_row(self) -> Dict[str, Any]:
        row = asdict(self)
        row["steps_per_sec"] = self.steps_per_sec
        return row


def measure_sampler(
    graph: Graph,
    model_kind: ModelKind,
    sampler_kind: SamplerKind,
    config: BenchConfig,
    p: float = 1.0,
    q: float = 1.0,
    metapath: Optional[Sequence[int]] = None,
    edge_matrix: Optional[np.ndarray] = None,
) -> BenchRow:
    """Walk from successive start nodes until ``config.steps`` steps were sampled."""
    model = build_model(model_kind, graph, p, q, metapath=metapath, edge_matrix=edge_matrix)
    sampler = build_edge_sampler(sampler_kind, model, config.init)
    starts, _ = legal_starts(model)

    steps = 0
    walk_index = 0
    started = time.perf_counter()
    while steps < config.steps and starts.size:
        before = steps
        for start in starts:
            outcome = walk_from(
                int(start),
                walk_index,
                model,
                sampler,
                min(config.walk_length, config.steps - steps),
                config.seed,
            )
            if outcome is not None:
                steps += len(outcome[0]) - 1
            if steps >= config.steps:
                break
        walk_index += 1
        if steps == before:
            break  # every walk ends at its start
    elapsed = time.perf_counter() - started

    row = BenchRow(
        sampler=sampler_kind.value,
        model=model_kind.value,
        p=float(p),
        q=float(q),
        steps=steps,
        seconds=elapsed,
        init_seconds=sampler.init_seconds,
        acceptance_ratio=sampler.acceptance_ratio,
        aux_bytes=sampler.auxiliary_bytes(),
    )
    logger.info(
        f"{row.sampler:9s} {row.model} p={row.p:g} q={row.q:g}: "
        f"{row.steps_per_sec:.0f} steps/sec, acceptance {row.acceptance_ratio:.3f}, "
        f"{row.aux_bytes} aux bytes"
    )
    return row


def run_benchmark(
    graph: Graph,
    model_kind: ModelKind,
    config: BenchConfig,
    p: float = 1.0,
    q: float = 1.0,
    metapath: Optional[Sequence[int]] = None,
    edge_matrix: Optional[np.ndarray] = None,
) -> List[BenchRow]:
    """Measure every configured sampler, once or across a p/q sweep."""
    model_kind = ModelKind(model_kind)
    if config.sweep == "p":
        settings = [(value, q) for value in config.sweep_values]
    elif config.sweep == "q":
        settings = [(p, value) for value in config.sweep_values]
    else:
        settings = [(p, q)]

    rows = []
    for p_value, q_value in settings:
        for sampler_kind in config.samplers:
            rows.append(
                measure_sampler(
                    graph,
                    model_kind,
                    sampler_kind,
                    config,
                    p=p_value,
                    q=q_value,
                    metapath=metapath,
                    edge_matrix=edge_matrix,
                )
            )
    return rows
