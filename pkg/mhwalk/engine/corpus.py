"""Walk corpus: the walks of one run plus run statistics, and their text format."""

import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Union

from mhwalk.errors import CorpusIOError, GraphFormatError

logger = logging.getLogger(__name__)

STATS_SUFFIX = ".stats.jsonl"


@dataclass
class WalkStats:
    """Counters of one walk-generation run."""
    walks: int = 0
    early_terminations: int = 0
    skipped_starts: int = 0
    steps: int = 0
    walk_length: int = 0
    threads: int = 1
    sampler: str = "mh"
    init_seconds: float = 0.0
    walk_seconds: float = 0.0
    acceptance_ratio: float = 1.0
    aux_bytes: int = 0

    @property
    def steps_per_sec(self) -> float:
        """Sampled steps per second of wall time (0 when nothing was timed)."""
        return self.steps / self.walk_seconds if self.walk_seconds > 0 else 0.0

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        data = asdict(self)
        data["steps_per_sec"] = self.steps_per_sec
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "WalkStats":
        """Create from dictionary; unknown keys are ignored."""
        known = {name for name in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in data.items() if k in known})


@dataclass
class WalkCorpus:
    """Walks in emission order; each walk starts at its start node."""
    walks: List[List[int]] = field(default_factory=list)
    stats: WalkStats = field(default_factory=WalkStats)

    def __len__(self) -> int:
        return len(self.walks)

    def __iter__(self) -> Iterator[List[int]]:
        return iter(self.walks)

    def node_count(self) -> int:
        """Total nodes over all walks."""
        return sum(len(walk) for walk in self.walks)


def stats_path(path: Union[str, Path]) -> Path:
    """Sidecar file holding the run statistics of a corpus file."""
    path = Path(path)
    return path.with_name(path.name + STATS_SUFFIX)


def write_corpus(corpus: WalkCorpus, path: Union[str, Path]) -> None:
    """Write one walk per line (space-separated ids) and a JSON-lines stats sidecar.

    Raises:
        CorpusIOError: If either file cannot be written
    """
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8") as fout:
            for walk in corpus.walks:
                fout.write(" ".join(str(v) for v in walk))
                fout.write("\n")
    except OSError as e:
        raise CorpusIOError(f"cannot write corpus: {e.strerror or e}", path) from e

    sidecar = stats_path(path)
    try:
        with open(sidecar, "w", encoding="utf-8") as fout:
            fout.write(json.dumps(corpus.stats.to_dict(), sort_keys=True))
            fout.write("\n")
    except OSError as e:
        raise CorpusIOError(f"cannot write corpus stats: {e.strerror or e}", sidecar) from e

    logger.info(f"Wrote {len(corpus)} walks to {path}")


def read_corpus(path: Union[str, Path]) -> WalkCorpus:
    """Read a corpus written by :func:`write_corpus`; stats come from the sidecar if present.

    Raises:
        CorpusIOError: If the corpus file cannot be read
        GraphFormatError: If a line holds a non-integer token
    """
    path = Path(path)
    walks: List[List[int]] = []
    try:
        with open(path, "r", encoding="utf-8") as fin:
            for line_number, line in enumerate(fin, start=1):
                try:
                    walks.append([int(token) for token in line.split()])
                except ValueError:
                    raise GraphFormatError(
                        f"non-integer node id in walk: {line.strip()!r}", path, line_number
                    ) from None
    except OSError as e:
        raise CorpusIOError(f"cannot read corpus: {e.strerror or e}", path) from e

    stats = WalkStats()
    sidecar = stats_path(path)
    if sidecar.exists():
        try:
            with open(sidecar, "r", encoding="utf-8") as fin:
                records = [json.loads(line) for line in fin if line.strip()]
        except (OSError, json.JSONDecodeError) as e:
            raise CorpusIOError(f"cannot read corpus stats: {e}", sidecar) from e
        if records:
            stats = WalkStats.from_dict(records[-1])
    return WalkCorpus(walks=walks, stats=stats)
