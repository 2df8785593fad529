"""Walk engine: run configuration, edge samplers, walk generation and corpus I/O."""

from mhwalk.engine.config import SamplerKind, WalkConfig
from mhwalk.engine.corpus import WalkCorpus, WalkStats, read_corpus, stats_path, write_corpus
from mhwalk.engine.edge_samplers import (
    AliasEdgeSampler,
    DirectEdgeSampler,
    EdgeSampler,
    MhEdgeSampler,
    RejectionEdgeSampler,
    build_edge_sampler,
)
from mhwalk.engine.walker import generate_walks, legal_starts, walk_from

__all__ = [
    "SamplerKind",
    "WalkConfig",
    "WalkCorpus",
    "WalkStats",
    "read_corpus",
    "stats_path",
    "write_corpus",
    "EdgeSampler",
    "MhEdgeSampler",
    "AliasEdgeSampler",
    "DirectEdgeSampler",
    "RejectionEdgeSampler",
    "build_edge_sampler",
    "generate_walks",
    "legal_starts",
    "walk_from",
]
