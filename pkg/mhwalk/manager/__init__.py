"""Sampler manager: per-state M-H slots in a position/affixture layout."""

from mhwalk.manager.layout import StateLayout
from mhwalk.manager.sampler_manager import (
    DEAD_END,
    SamplerManager,
    SlotSampler,
    build_manager,
    query_sampler,
)

__all__ = [
    "DEAD_END",
    "SamplerManager",
    "SlotSampler",
    "StateLayout",
    "build_manager",
    "query_sampler",
]
