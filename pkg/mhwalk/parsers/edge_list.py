"""Reader and writer for "src dst [weight]" edge lists."""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from mhwalk.errors import CorpusIOError, GraphValidationError
from mhwalk.graph.csr import Graph
from mhwalk.parsers.base import RecordParser

logger = logging.getLogger(__name__)


@dataclass
class EdgeListOptions:
    """How an edge list is interpreted."""
    weighted: bool = False  # read the optional third column
    symmetrize: bool = False  # insert every edge in both directions


class EdgeListParser(RecordParser[Graph]):
    """Parser for edge-list files with an optional weight column."""

    layout = "src dst [weight]"

    def __init__(self, options: Optional[EdgeListOptions] = None) -> None:
        super().__init__()
        self.options = options or EdgeListOptions()
        self._sources: List[int] = []
        self._targets: List[int] = []
        self._weights: List[float] = []
        self._declared_nodes = 0

    def parse_comment(self, text: str, line_number: int) -> None:
        # "# nodes: N" keeps trailing isolated nodes across a write/read cycle
        key, _, value = text.partition(":")
        if key.strip().lower() == "nodes" and value.strip().isdigit():
            self._declared_nodes = int(value)

    def parse_record(self, fields: List[str], line_number: int) -> None:
        if len(fields) not in (2, 3):
            raise self.error(f"expected 2 or 3 fields, got {len(fields)}", line_number)

        source = self.parse_node_id(fields[0], line_number)
        target = self.parse_node_id(fields[1], line_number)

        weight = 1.0
        if len(fields) == 3:
            try:
                parsed = float(fields[2])
            except ValueError:
                raise self.error(f"invalid weight '{fields[2]}'", line_number) from None
            if not math.isfinite(parsed):
                raise self.error(f"weight must be finite, got {fields[2]}", line_number)
            if parsed < 0:
                raise GraphValidationError(
                    f"{self.path}:{line_number}: negative weight {parsed}"
                )
            if self.options.weighted:
                weight = parsed

        self._sources.append(source)
        self._targets.append(target)
        self._weights.append(weight)

    def finish(self) -> Graph:
        sources = np.array(self._sources, dtype=np.int64)
        targets = np.array(self._targets, dtype=np.int64)
        node_count = self._declared_nodes
        if sources.size:
            node_count = max(node_count, int(max(sources.max(), targets.max())) + 1)
        return Graph.from_arcs(
            node_count,
            sources,
            targets,
            np.array(self._weights, dtype=np.float64),
            symmetrize=self.options.symmetrize,
        )


def load_edge_list(
    path: Union[str, Path], options: Optional[EdgeListOptions] = None
) -> Graph:
    """Load an edge-list file into CSR form.

    Duplicate edges collapse into one arc whose weight is the sum of the
    duplicates.

    Args:
        path: Edge-list file ("src dst [weight]" per line, '#' comments)
        options: Weighted/symmetrize switches

    Returns:
        Loaded graph

    Raises:
        GraphFormatError: On a malformed line (message carries the line number)
        GraphValidationError: On a negative weight
    """
    graph = EdgeListParser(options).parse(path)
    logger.info(f"Loaded {path}: {graph}, mean degree {graph.mean_degree:.1f}")
    return graph


def write_edge_list(graph: Graph, path: Union[str, Path]) -> None:
    """Write every arc as "src dst weight" (reloading yields an identical graph)."""
    path = Path(path)
    sources = np.repeat(np.arange(graph.node_count), graph.degrees())
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(f"# nodes: {graph.node_count}\n")
            for source, target, weight in zip(
                sources.tolist(), graph.neighbors.tolist(), graph.weights.tolist()
            ):
                f.write(f"{source} {target} {weight!r}\n")
    except OSError as e:
        raise CorpusIOError(f"Failed to write edge list ({e.strerror})", path) from e
