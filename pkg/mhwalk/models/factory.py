"""Construction of walk models from user-facing parameters."""

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np

from mhwalk.errors import ModelConfigError
from mhwalk.graph.csr import Graph
from mhwalk.models.walk_model import (
    DeepWalkModel,
    Edge2VecModel,
    FairwalkModel,
    Metapath2VecModel,
    ModelKind,
    Node2VecModel,
    WalkModel,
)

logger = logging.getLogger(__name__)


def parse_metapath(text: str) -> List[int]:
    """Parse a comma-separated list of type ids, e.g. ``"0,1,0"``."""
    try:
        metapath = [int(token) for token in text.split(",") if token.strip()]
    except ValueError as e:
        raise ModelConfigError(f"Invalid metapath '{text}': {e}") from e
    if any(t < 0 for t in metapath):
        raise ModelConfigError(f"Invalid metapath '{text}': type ids must be non-negative")
    return metapath


def load_edge_matrix(path: Union[str, Path]) -> np.ndarray:
    """Load an edge-type transition matrix from a CSV file of ``|types|`` rows."""
    try:
        matrix = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2, comments="#")
    except ValueError as e:
        raise ModelConfigError(f"Invalid edge-type matrix {path}: {e}") from e
    logger.info(f"Loaded {matrix.shape[0]}x{matrix.shape[1]} edge-type matrix from {path}")
    return matrix


def build_model(
    kind: Union[str, ModelKind],
    graph: Graph,
    p: float = 1.0,
    q: float = 1.0,
    metapath: Optional[Sequence[int]] = None,
    edge_matrix: Optional[np.ndarray] = None,
) -> WalkModel:
    """Create a walk model bound to ``graph``.

    Args:
        kind: Model name or ModelKind
        graph: Graph the model walks on
        p: Return parameter (second-order models)
        q: In-out parameter (second-order models)
        metapath: Type-id sequence (metapath2vec)
        edge_matrix: Edge-type transition matrix (edge2vec)

    Returns:
        Bound walk model

    Raises:
        ModelConfigError: If the parameters or the graph do not fit the model
    """
    try:
        kind = ModelKind(kind)
    except ValueError:
        names = ", ".join(k.value for k in ModelKind)
        raise ModelConfigError(f"Unknown model '{kind}' (choose from {names})") from None

    if kind == ModelKind.DEEPWALK:
        model: WalkModel = DeepWalkModel(graph)
    elif kind == ModelKind.NODE2VEC:
        model = Node2VecModel(graph, p, q)
    elif kind == ModelKind.EDGE2VEC:
        model = Edge2VecModel(graph, p, q, edge_matrix)
    elif kind == ModelKind.FAIRWALK:
        model = FairwalkModel(graph, p, q)
    else:
        if metapath is None:
            raise ModelConfigError("metapath2vec needs a metapath")
        model = Metapath2VecModel(graph, metapath)

    logger.debug(f"Built model {model}")
    return model
