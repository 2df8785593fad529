"""Walk models: walker states, dynamic edge weights and state updates."""

from mhwalk.models.state import BOOTSTRAP, NONE, WalkerState
from mhwalk.models.walk_model import (
    DeepWalkModel,
    Edge2VecModel,
    FairwalkModel,
    Metapath2VecModel,
    ModelKind,
    Node2VecModel,
    SecondOrderModel,
    WalkModel,
)
from mhwalk.models.factory import build_model, load_edge_matrix, parse_metapath

__all__ = [
    "BOOTSTRAP",
    "NONE",
    "WalkerState",
    "ModelKind",
    "WalkModel",
    "DeepWalkModel",
    "SecondOrderModel",
    "Node2VecModel",
    "Edge2VecModel",
    "FairwalkModel",
    "Metapath2VecModel",
    "build_model",
    "load_edge_matrix",
    "parse_metapath",
]
