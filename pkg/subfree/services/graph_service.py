"""Principal graphs backed by a NetworkX multigraph.

A principal graph is a connected bipartite multigraph whose vertices carry a
parity (even/odd) and which has a distinguished even vertex, the star `*`.
Every edge has its own id (parallel edges are allowed) and an ordered pair
of ends `(tail, head)`. The order is the orientation used by loop words:
the letter `c_e` runs from `tail` to `head`. The tower formulas ignore it
and use the parity convention instead: `source(e)` is the even end,
`target(e)` the odd end.

Implemented features:
- `validate(raw)` builds a graph from a parsed description and checks every
  structural invariant, raising a named error for the first violation.
- `load_graph(path)` / `dump_graph(graph)` read and write the JSON format.
- `relabel`, `distances_from_star` and `path_graph` helpers.
"""
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence

import networkx as nx
import numpy as np
from pydantic import ValidationError

from subfree.errors import (
    Disconnected,
    DuplicateId,
    GraphFileError,
    NotBipartite,
    StarNotEven,
    UnknownVertex,
)
from subfree.schemas import GraphFile

logger = logging.getLogger(__name__)

EVEN = "even"
ODD = "odd"


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str


class PrincipalGraph:
    def __init__(self, star: str):
        self.G = nx.MultiGraph()
        self.star = star
        self._edges: Dict[str, Edge] = {}

    def add_vertices(self, vertices: Sequence[Mapping[str, str]]):
        for v in vertices:
            self.G.add_node(v["id"], parity=v["parity"])

    def add_edges(self, edges: Sequence[Mapping[str, Any]]):
        for e in edges:
            tail, head = e["ends"]
            edge = Edge(id=e["id"], tail=tail, head=head)
            self._edges[edge.id] = edge
            self.G.add_edge(tail, head, key=edge.id)

    @property
    def vertices(self) -> List[str]:
        return list(self.G.nodes)

    @property
    def edges(self) -> List[Edge]:
        return list(self._edges.values())

    def edge(self, edge_id: str) -> Edge:
        return self._edges[edge_id]

    def has_edge(self, edge_id: str) -> bool:
        return edge_id in self._edges

    def parity(self, vertex: str) -> str:
        return self.G.nodes[vertex]["parity"]

    @property
    def even_vertices(self) -> List[str]:
        return [v for v in self.G.nodes if self.parity(v) == EVEN]

    @property
    def odd_vertices(self) -> List[str]:
        return [v for v in self.G.nodes if self.parity(v) == ODD]

    def source(self, edge_id: str) -> str:
        """Even end of the edge."""
        e = self._edges[edge_id]
        return e.tail if self.parity(e.tail) == EVEN else e.head

    def target(self, edge_id: str) -> str:
        """Odd end of the edge."""
        e = self._edges[edge_id]
        return e.head if self.parity(e.tail) == EVEN else e.tail

    def adjacency(self, order: Optional[Sequence[str]] = None) -> np.ndarray:
        """Adjacency matrix; parallel edges add up."""
        order = list(order) if order is not None else self.vertices
        index = {v: i for i, v in enumerate(order)}
        A = np.zeros((len(order), len(order)))
        for e in self._edges.values():
            i, j = index[e.tail], index[e.head]
            A[i, j] += 1.0
            A[j, i] += 1.0
        return A

    def __repr__(self) -> str:
        return (
            f"PrincipalGraph(star={self.star!r}, vertices={len(self.G)}, "
            f"edges={len(self._edges)})"
        )


def validate(raw: Mapping[str, Any]) -> PrincipalGraph:
    """Build a `PrincipalGraph` from a parsed description.

    Raises the error named after the first violated invariant:
    DuplicateId, UnknownVertex, StarNotEven, NotBipartite, Disconnected.
    """
    try:
        parsed = GraphFile.model_validate(raw)
    except ValidationError as exc:
        raise GraphFileError(f"malformed graph description: {exc}") from exc

    for name in parsed.unknown_fields():
        logger.warning(f"ignoring unknown graph field {name!r}")

    vertex_ids = [v.id for v in parsed.vertices]
    dup = _first_duplicate(vertex_ids)
    if dup is not None:
        raise DuplicateId(f"vertex id {dup!r} appears more than once")
    edge_ids = [e.id for e in parsed.edges]
    dup = _first_duplicate(edge_ids)
    if dup is not None:
        raise DuplicateId(f"edge id {dup!r} appears more than once")

    parity = {v.id: v.parity for v in parsed.vertices}
    for e in parsed.edges:
        for end in e.ends:
            if end not in parity:
                raise UnknownVertex(f"edge {e.id!r} ends at unknown vertex {end!r}")
    if parsed.star not in parity:
        raise UnknownVertex(f"star {parsed.star!r} is not a vertex")
    if parity[parsed.star] != EVEN:
        raise StarNotEven(f"star {parsed.star!r} has parity {parity[parsed.star]}")

    for e in parsed.edges:
        a, b = e.ends
        if parity[a] == parity[b]:
            raise NotBipartite(
                f"edge {e.id!r} joins {a!r} and {b!r}, both {parity[a]}"
            )

    g = PrincipalGraph(star=parsed.star)
    g.add_vertices([{"id": v.id, "parity": v.parity} for v in parsed.vertices])
    g.add_edges([{"id": e.id, "ends": e.ends} for e in parsed.edges])

    if not nx.is_connected(g.G):
        parts = nx.number_connected_components(g.G)
        raise Disconnected(f"graph has {parts} connected components")
    return g


def _first_duplicate(ids: Sequence[str]) -> Optional[str]:
    seen = set()
    for i in ids:
        if i in seen:
            return i
        seen.add(i)
    return None


def load_graph(path) -> PrincipalGraph:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise GraphFileError(f"graph file not found: {path}")
    except (OSError, json.JSONDecodeError) as exc:
        raise GraphFileError(f"cannot read graph file {path}: {exc}") from exc
    logger.info(f"loaded graph description from {path}")
    return validate(raw)


def dump_graph(graph: PrincipalGraph) -> Dict[str, Any]:
    return {
        "vertices": [{"id": v, "parity": graph.parity(v)} for v in graph.vertices],
        "edges": [{"id": e.id, "ends": [e.tail, e.head]} for e in graph.edges],
        "star": graph.star,
    }


def relabel(graph: PrincipalGraph, mapping: Mapping[str, str]) -> PrincipalGraph:
    """Rename vertices; ids missing from `mapping` are kept."""
    raw = dump_graph(graph)
    rename = lambda v: mapping.get(v, v)
    raw["vertices"] = [{"id": rename(v["id"]), "parity": v["parity"]} for v in raw["vertices"]]
    raw["edges"] = [{"id": e["id"], "ends": [rename(x) for x in e["ends"]]} for e in raw["edges"]]
    raw["star"] = rename(raw["star"])
    return validate(raw)


def distances_from_star(graph: PrincipalGraph) -> Dict[str, int]:
    return dict(nx.single_source_shortest_path_length(graph.G, graph.star))


def chain_vertex(j: int) -> str:
    """Name of the j-th vertex (1-based) of a path graph; vertex 1 is the star."""
    return "*" if j == 1 else f"v{j}"


def path_graph(length: int) -> PrincipalGraph:
    """The path A_length, star at one end, edge j running from vertex j to j+1.

    Edge ids are "1", "2", ... so the letter for edge j is written `cj`.
    """
    vertices = [
        {"id": chain_vertex(j), "parity": EVEN if j % 2 == 1 else ODD}
        for j in range(1, length + 1)
    ]
    edges = [
        {"id": str(j), "ends": [chain_vertex(j), chain_vertex(j + 1)]}
        for j in range(1, length)
    ]
    return validate({"vertices": vertices, "edges": edges, "star": "*"})
