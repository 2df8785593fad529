"""Serializers for run artifacts: model descriptions, graph digests and CSV tables."""

import csv
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

from mhwalk.errors import CorpusIOError
from mhwalk.graph.csr import Graph
from mhwalk.graph.digest import graph_digest
from mhwalk.models.walk_model import WalkModel

logger = logging.getLogger(__name__)


class GraphSerializer:
    """Serializer for Graph identity."""

    @staticmethod
    def to_dict(graph: Graph) -> Dict[str, Any]:
        """Sizes and checksum of ``graph``.

        Args:
            graph: Graph to describe

        Returns:
            Dictionary representation
        """
        return graph_digest(graph)


class ModelSerializer:
    """Serializer for bound walk models."""

    @staticmethod
    def to_dict(model: WalkModel) -> Dict[str, Any]:
        """Model kind and parameters, with numpy values made JSON-friendly."""
        return {key: _plain(value) for key, value in model.describe().items()}


def _plain(value: Any) -> Any:
    if hasattr(value, "tolist"):
        return value.tolist()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def write_csv_rows(
    path: Union[str, Path], columns: Sequence[str], rows: Iterable[Dict[str, Any]]
) -> int:
    """Write ``rows`` under a header of ``columns``; returns the number of rows.

    Raises:
        CorpusIOError: If the file cannot be written
    """
    path = Path(path)
    count = 0
    try:
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=list(columns), extrasaction="ignore")
            writer.writeheader()
            for row in rows:
                writer.writerow(row)
                count += 1
    except OSError as e:
        raise CorpusIOError(f"cannot write CSV: {e.strerror or e}", path) from e
    logger.info(f"Wrote {count} rows to {path}")
    return count


def read_csv_rows(path: Union[str, Path]) -> List[Dict[str, str]]:
    """Read a CSV written by :func:`write_csv_rows`."""
    path = Path(path)
    try:
        with open(path, "r", newline="", encoding="utf-8") as f:
            return list(csv.DictReader(f))
    except OSError as e:
        raise CorpusIOError(f"cannot read CSV: {e.strerror or e}", path) from e
