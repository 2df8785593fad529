"""Parsers for graph text formats."""

from mhwalk.parsers.base import RecordParser
from mhwalk.parsers.edge_list import (
    EdgeListOptions,
    EdgeListParser,
    load_edge_list,
    write_edge_list,
)
from mhwalk.parsers.type_files import (
    EdgeTypeParser,
    NodeTypeParser,
    load_edge_types,
    load_node_types,
)

__all__ = [
    "RecordParser",
    "EdgeListOptions",
    "EdgeListParser",
    "NodeTypeParser",
    "EdgeTypeParser",
    "load_edge_list",
    "write_edge_list",
    "load_node_types",
    "load_edge_types",
]
