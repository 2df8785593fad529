"""Walk run configuration."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict

from mhwalk.samplers.mh import InitStrategy


class SamplerKind(Enum):
    """Edge sampler used to draw the next arc."""
    MH = "mh"
    ALIAS = "alias"
    DIRECT = "direct"
    REJECTION = "rejection"


@dataclass
class WalkConfig:
    """Parameters of one walk-generation run.

    ``walk_length`` counts steps, so a walk holds at most
    ``walk_length + 1`` nodes.
    """
    walks_per_node: int = 10
    walk_length: int = 80
    threads: int = 1
    seed: int = 0
    sampler_kind: SamplerKind = SamplerKind.MH
    init: InitStrategy = field(default_factory=InitStrategy)

    def __post_init__(self) -> None:
        if isinstance(self.sampler_kind, str):
            self.sampler_kind = SamplerKind(self.sampler_kind)
        if self.walks_per_node < 1:
            raise ValueError(f"walks_per_node must be >= 1, got {self.walks_per_node}")
        if self.walk_length < 1:
            raise ValueError(f"walk_length must be >= 1, got {self.walk_length}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def deterministic(self) -> bool:
        """Single-threaded runs are bit-reproducible for a fixed seed."""
        return self.threads == 1

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "walks_per_node": self.walks_per_node,
            "walk_length": self.walk_length,
            "threads": self.threads,
            "seed": self.seed,
            "sampler_kind": self.sampler_kind.value,
            "init": self.init.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "WalkConfig":
        """Create from dictionary."""
        init_data = dict(data.get("init", {}))
        init = (
            InitStrategy.from_name(init_data.pop("kind"), **init_data)
            if "kind" in init_data
            else InitStrategy()
        )
        return cls(
            walks_per_node=data.get("walks_per_node", 10),
            walk_length=data.get("walk_length", 80),
            threads=data.get("threads", 1),
            seed=data.get("seed", 0),
            sampler_kind=SamplerKind(data.get("sampler_kind", "mh")),
            init=init,
        )
