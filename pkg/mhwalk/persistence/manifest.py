"""Run manifests: resolved configuration, input identity and timing of one command."""

import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional, Union

from mhwalk import __version__
from mhwalk.errors import CorpusIOError

logger = logging.getLogger(__name__)

MANIFEST_SUFFIX = ".manifest.json"


@dataclass
class RunManifest:
    """Everything needed to reproduce and cost one run.

    ``timing`` holds ``T_i`` (sampler initialization seconds) and ``T_w``
    (walk or measurement seconds).
    """
    command: str
    config: Dict[str, Any] = field(default_factory=dict)
    graph: Optional[Dict[str, Any]] = None
    model: Optional[Dict[str, Any]] = None
    timing: Dict[str, float] = field(default_factory=lambda: {"T_i": 0.0, "T_w": 0.0})
    results: Dict[str, Any] = field(default_factory=dict)
    version: str = __version__
    created_at: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "command": self.command,
            "version": self.version,
            "created_at": self.created_at,
            "config": self.config,
            "graph": self.graph,
            "model": self.model,
            "timing": self.timing,
            "results": self.results,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunManifest":
        """Create from dictionary."""
        return cls(
            command=data["command"],
            config=data.get("config", {}),
            graph=data.get("graph"),
            model=data.get("model"),
            timing=data.get("timing", {"T_i": 0.0, "T_w": 0.0}),
            results=data.get("results", {}),
            version=data.get("version", __version__),
            created_at=data.get("created_at", ""),
        )


def manifest_path(output: Union[str, Path]) -> Path:
    """Manifest location for a command output file."""
    output = Path(output)
    return output.with_name(output.name + MANIFEST_SUFFIX)


def write_manifest(manifest: RunManifest, output: Union[str, Path]) -> Path:
    """Write ``manifest`` next to ``output`` as a single JSON object.

    Raises:
        CorpusIOError: If the file cannot be written
    """
    path = manifest_path(output)
    try:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(manifest.to_dict(), f, indent=2, sort_keys=True, default=str)
            f.write("\n")
    except OSError as e:
        raise CorpusIOError(f"cannot write manifest: {e.strerror or e}", path) from e
    logger.info(f"Wrote run manifest to {path}")
    return path


def read_manifest(path: Union[str, Path]) -> RunManifest:
    """Load a manifest file."""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            return RunManifest.from_dict(json.load(f))
    except (OSError, json.JSONDecodeError) as e:
        raise CorpusIOError(f"cannot read manifest: {e}", path) from e
