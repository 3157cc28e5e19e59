# ===============================================================
#  File: document_handler.py
#  Description: Graft document parsing and serialization.
#               A document is a versioned JSON object naming
#               vertices, edges (order = edge id), terminals and
#               an optional spine hint.
#
#  Author: ac.craft8
#  Created: 2025-06-24
#  License: MIT
# ===============================================================

# ================================
#  Module and Library Imports
# ================================
import json
import logging
from dataclasses import dataclass

from core.decomposition import CombDesignation
from core.errors import DocumentError
from core.graft import Graft, build_multigraph, validate_graft

logger = logging.getLogger(__name__)

# ================================
#  Configuration
# ================================
FORMAT_VERSION = 1
REQUIRED_KEYS = ("version", "vertices", "edges", "terminals")
OPTIONAL_KEYS = ("spine",)


# ================================
#  Document Type
# ================================

@dataclass(frozen=True)
class GraftDocument:
    version: int
    vertices: tuple
    edges: tuple  # (u, v) label pairs
    terminals: tuple
    spine: tuple = None

    def to_graft(self) -> Graft:
        """Build the graft; raises DuplicateLabel, UnknownLabel or OddComponent"""
        graph = build_multigraph(self.vertices, self.edges)
        return validate_graft(graph, [graph.vertex_id(label) for label in self.terminals])

    def designation(self, G: Graft):
        """The spine hint as a designation, or None when the document has none"""
        if self.spine is None:
            return None
        spine = frozenset(G.graph.vertex_id(label) for label in self.spine)
        return CombDesignation(spine, frozenset(range(G.graph.n)) - spine)


# ================================
#  Function Definitions
# ================================

def _labels(value, key):
    if not isinstance(value, list) or not all(isinstance(label, str) for label in value):
        raise DocumentError(f"'{key}' must be a list of strings")
    return tuple(value)


def _edges(value):
    if not isinstance(value, list):
        raise DocumentError("'edges' must be a list of [u, v] pairs")
    edges = []
    for e, pair in enumerate(value):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise DocumentError(f"edge {e} must be a pair of vertex labels")
        edges.append(tuple(pair))
    return tuple(edges)


def parse_graft_file(data) -> GraftDocument:
    """Parse and validate a graft document from UTF-8 bytes"""
    try:
        text = data.decode('utf-8') if isinstance(data, bytes) else data
    except UnicodeDecodeError as e:
        raise DocumentError(f"document is not UTF-8 text: {e.reason} at byte {e.start}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, e.lineno, e.colno) from None

    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    unknown = sorted(set(raw) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS))
    if unknown:
        raise DocumentError(f"unknown field '{unknown[0]}'")
    missing = [key for key in REQUIRED_KEYS if key not in raw]
    if missing:
        raise DocumentError(f"missing field '{missing[0]}'")
    if raw["version"] != FORMAT_VERSION or isinstance(raw["version"], bool):
        raise DocumentError(f"unsupported version {raw['version']!r}")

    spine = raw.get("spine")
    document = GraftDocument(
        version=FORMAT_VERSION,
        vertices=_labels(raw["vertices"], "vertices"),
        edges=_edges(raw["edges"]),
        terminals=_labels(raw["terminals"], "terminals"),
        spine=None if spine is None else _labels(spine, "spine"),
    )
    G = document.to_graft()
    document.designation(G)
    logger.debug("Parsed graft document with %d vertices and %d edges", G.graph.n, G.graph.m)
    return document


def serialize_graft(document: GraftDocument) -> str:
    """Canonical JSON text of a document; parse_graft_file reads it back unchanged"""
    payload = {
        "version": document.version,
        "vertices": list(document.vertices),
        "edges": [list(pair) for pair in document.edges],
        "terminals": list(document.terminals),
    }
    if document.spine is not None:
        payload["spine"] = list(document.spine)
    return json.dumps(payload, indent=2) + "\n"


def document_from_graft(G: Graft, designation=None) -> GraftDocument:
    """Document describing G, terminals in vertex order, with an optional spine hint"""
    graph = G.graph
    labels = [str(label) for label in graph.labels]
    spine = None
    if designation is not None:
        spine = tuple(labels[v] for v in sorted(designation.spine))
    return GraftDocument(
        version=FORMAT_VERSION,
        vertices=tuple(labels),
        edges=tuple((labels[u], labels[v]) for u, v in graph.edges),
        terminals=tuple(labels[v] for v in sorted(G.terminals)),
        spine=spine,
    )
