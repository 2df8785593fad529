"""Persistence layer for run manifests and tabular results."""

from mhwalk.persistence.manifest import (
    RunManifest,
    manifest_path,
    read_manifest,
    write_manifest,
)
from mhwalk.persistence.serializers import (
    GraphSerializer,
    ModelSerializer,
    read_csv_rows,
    write_csv_rows,
)

__all__ = [
    'RunManifest',
    'manifest_path',
    'read_manifest',
    'write_manifest',
    'GraphSerializer',
    'ModelSerializer',
    'read_csv_rows',
    'write_csv_rows',
]
