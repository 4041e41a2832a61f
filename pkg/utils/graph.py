"""
Edge-labeled graphs, splines and their JSON documents.
"""
import json
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, List, Tuple, Union

import networkx as nx

from api.serializers import GraphDocumentSerializer, SplineDocumentSerializer
from .exceptions import (
    Disconnected,
    DuplicateEdge,
    LengthMismatch,
    RingMismatch,
    SchemaError,
    SelfLoop,
    VertexOutOfRange,
)
from .ring import RingElem, RingSpec, parse_elem, parse_ring_spec, print_elem

# Configure logging
logger = logging.getLogger(__name__)

LabelLike = Union[RingElem, int, str]


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    label: RingElem

    @property
    def endpoints(self) -> Tuple[int, int]:
        return self.u, self.v


@dataclass(frozen=True)
class LabeledGraph:
    """
    A simple connected graph on vertices 1..n with ring-element edge labels.

    Edges are stored canonically (u < v, sorted), so two documents listing the same
    edges in different orders load to equal graphs.

    Attributes:
        ring: The base ring of every label.
        n: Number of vertices.
        edges: Canonically ordered edges.
    """
    ring: RingSpec
    n: int
    edges: Tuple[Edge, ...]

    @classmethod
    def build(cls, ring: RingSpec, n: int, edges: Iterable[Tuple[int, int, LabelLike]]) -> 'LabeledGraph':
        """
        Validate and canonicalize a graph.

        Args:
            ring: Base ring.
            n: Vertex count.
            edges: (u, v, label) triples; labels may be RingElems, ints or text.

        Returns:
            The validated graph.

        Raises:
            SelfLoop, DuplicateEdge, VertexOutOfRange, Disconnected, ParseError.
        """
        canonical: Dict[Tuple[int, int], Edge] = {}
        for u, v, label in edges:
            for vertex in (u, v):
                if not 1 <= vertex <= n:
                    raise VertexOutOfRange(vertex, n)
            if u == v:
                raise SelfLoop(u)
            key = (min(u, v), max(u, v))
            if key in canonical:
                raise DuplicateEdge(*key)
            canonical[key] = Edge(key[0], key[1], _as_label(ring, label))

        graph = cls(ring, n, tuple(canonical[key] for key in sorted(canonical)))
        components = nx.number_connected_components(graph.nx_graph)
        if components != 1:
            raise Disconnected(components)
        return graph

    @cached_property
    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(1, self.n + 1))
        for edge in self.edges:
            g.add_edge(edge.u, edge.v, label=edge.label)
        return g

    @cached_property
    def adjacency(self) -> Dict[int, Tuple[int, ...]]:
        """Sorted neighbor lists, the order every enumeration walks in."""
        return {v: tuple(sorted(self.nx_graph.neighbors(v))) for v in range(1, self.n + 1)}

    def label(self, u: int, v: int) -> RingElem:
        return self.nx_graph.edges[u, v]['label']

    def degree(self, v: int) -> int:
        return self.nx_graph.degree[v]

    def vertices(self) -> range:
        return range(1, self.n + 1)


def _as_label(ring: RingSpec, label: LabelLike) -> RingElem:
    if isinstance(label, str):
        return parse_elem(ring, label)
    return ring.coerce(label)


@dataclass(frozen=True)
class Spline:
    """
    A vertex labeling (f_1, ..., f_n).

    Whether it is actually a spline is a property of a graph; see is_spline.
    """
    values: Tuple[RingElem, ...]

    @classmethod
    def of(cls, ring: RingSpec, values: Iterable[LabelLike]) -> 'Spline':
        return cls(tuple(_as_label(ring, value) for value in values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, vertex: int) -> RingElem:
        """Entry f_vertex, 1-based like the vertex numbering."""
        if not 1 <= vertex <= len(self.values):
            raise IndexError(f"Vertex {vertex} outside 1..{len(self.values)}")
        return self.values[vertex - 1]

    @property
    def ring(self) -> RingSpec:
        return self.values[0].ring

    def __add__(self, other: 'Spline') -> 'Spline':
        if len(other) != len(self):
            raise LengthMismatch(len(self), len(other))
        return Spline(tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: 'Spline') -> 'Spline':
        return self + other.scale(-1)

    def scale(self, r: Union[RingElem, int]) -> 'Spline':
        return Spline(tuple(value * r for value in self.values))

    @property
    def is_zero(self) -> bool:
        return all(value.is_zero for value in self.values)

    def __str__(self) -> str:
        return '(' + ', '.join(print_elem(v) for v in self.values) + ')'


@dataclass(frozen=True)
class SplineCheck:
    """Outcome of is_spline; truthy exactly when no edge condition is violated."""
    violations: Tuple[Tuple[int, int], ...] = ()

    def __bool__(self) -> bool:
        return not self.violations

    @property
    def ok(self) -> bool:
        return not self.violations


def is_spline(graph: LabeledGraph, spline: Spline) -> SplineCheck:
    """
    Check the spline condition on every edge.

    Args:
        graph: The edge-labeled graph.
        spline: Candidate vertex labeling.

    Returns:
        SplineCheck listing the edges (u, v) whose label does not divide f_u - f_v.
        A zero label demands f_u = f_v.

    Raises:
        LengthMismatch: If the vector length differs from the vertex count.
    """
    if len(spline) != graph.n:
        raise LengthMismatch(graph.n, len(spline))
    for value in spline:
        if value.ring != graph.ring:
            raise RingMismatch(graph.ring, value.ring)
    violations = tuple(
        edge.endpoints for edge in graph.edges
        if not edge.label.divides(spline[edge.u] - spline[edge.v])
    )
    return SplineCheck(violations)


def trivial_spline(graph: LabeledGraph, r: Union[RingElem, int]) -> Spline:
    """The constant labeling (r, ..., r), a spline on every graph."""
    value = graph.ring.coerce(r)
    return Spline((value,) * graph.n)


def graph_family(graph: LabeledGraph) -> str:
    """
    Classify the graph as 'tree', 'cycle', 'diamond' or 'other'.
    """
    g = graph.nx_graph
    if nx.is_tree(g):
        return 'tree'
    if graph.n >= 3 and g.number_of_edges() == graph.n and all(d == 2 for _, d in g.degree):
        return 'cycle'
    if graph.n == 4 and g.number_of_edges() == 5:
        return 'diamond'
    return 'other'


def _load_document(document: Union[str, bytes, Dict[str, Any]]) -> Dict[str, Any]:
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as e:
            raise SchemaError(f"Invalid JSON: {e}")
    if not isinstance(document, dict):
        raise SchemaError("Document must be a JSON object")
    return document


def load_graph(document: Union[str, bytes, Dict[str, Any]]) -> LabeledGraph:
    """
    Load a graph document.

    Args:
        document: JSON text or an already decoded object of the form
            {"ring": "Z" | "Q[x]" | "GF(p)[x]", "vertices": n,
             "edges": [{"u": int, "v": int, "label": "text"}, ...]}.

    Returns:
        The validated LabeledGraph.

    Raises:
        SchemaError, UnsupportedRing, ParseError, SelfLoop, DuplicateEdge,
        VertexOutOfRange, Disconnected.
    """
    serializer = GraphDocumentSerializer(data=_load_document(document))
    if not serializer.is_valid():
        raise SchemaError(serializer.errors)
    data = serializer.validated_data

    ring = parse_ring_spec(data['ring'])
    graph = LabeledGraph.build(
        ring,
        data['vertices'],
        ((edge['u'], edge['v'], edge['label']) for edge in data['edges']),
    )
    logger.info(f"Loaded graph over {ring} with {graph.n} vertices and {len(graph.edges)} edges")
    return graph


def save_graph(graph: LabeledGraph) -> Dict[str, Any]:
    """Canonical document of a graph; load_graph(save_graph(g)) == g."""
    return {
        'ring': str(graph.ring),
        'vertices': graph.n,
        'edges': [
            {'u': edge.u, 'v': edge.v, 'label': print_elem(edge.label)}
            for edge in graph.edges
        ],
    }


def load_spline(document: Union[str, bytes, Dict[str, Any]], ring: RingSpec) -> Spline:
    """
    Load a spline document {"values": ["f_1", ..., "f_n"]}.

    Raises:
        SchemaError, ParseError.
    """
    serializer = SplineDocumentSerializer(data=_load_document(document))
    if not serializer.is_valid():
        raise SchemaError(serializer.errors)
    return Spline.of(ring, serializer.validated_data['values'])


def load_splines(document: Union[str, bytes, Dict[str, Any]], ring: RingSpec) -> List[Spline]:
    """
    Load a list of splines.

    Accepts {"splines": [{"values": [...]}, ...]} as well as the basis output
    {"classes": [{"index": i, "values": [...]}, ...]}.
    """
    document = _load_document(document)
    members = document.get('splines', document.get('classes'))
    if not isinstance(members, list):
        raise SchemaError("Expected a 'splines' or 'classes' list")
    return [load_spline(member, ring) for member in members]


def dump_spline(spline: Spline) -> Dict[str, List[str]]:
    return {'values': [print_elem(v) for v in spline]}
