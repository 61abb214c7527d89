"""
Plumbing graph data model and cocycle operations

A plumbing graph carries a genus and an Euler number on every vertex and a
sign on every edge. The edge signs are one representative of the
orientation class; flipping a vertex changes the representative but not the
class.
"""

from typing import Literal

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from algebra.exact_linalg import IntMatrix
from utils.config import DEFAULT_EULER, DEFAULT_GENUS, DEFAULT_SIGN
from utils.errors import GraphValidationError

ID_PATTERN = r"^[A-Za-z0-9_]+$"


class VertexData(BaseModel):
    """Vertex decoration (g_v, e_v)"""

    model_config = ConfigDict(frozen=True)

    id: str = Field(..., pattern=ID_PATTERN)
    genus: int = Field(DEFAULT_GENUS, ge=0)
    euler: int = DEFAULT_EULER


class EdgeData(BaseModel):
    """Edge between two distinct vertices with its cocycle sign"""

    model_config = ConfigDict(frozen=True)

    endpoints: tuple[str, str]
    sign: Literal[1, -1] = DEFAULT_SIGN

    def other(self, v):
        a, b = self.endpoints
        return b if v == a else a

    def touches(self, v):
        return v in self.endpoints


class PlumbingGraph(BaseModel):
    """Vertices and edges in declaration order"""

    model_config = ConfigDict(frozen=True)

    vertices: tuple[VertexData, ...]
    edges: tuple[EdgeData, ...] = ()

    @property
    def vertex_ids(self):
        return [v.id for v in self.vertices]

    def index_of(self, vertex_id):
        for i, v in enumerate(self.vertices):
            if v.id == vertex_id:
                return i
        raise GraphValidationError(f"unknown vertex '{vertex_id}'")

    def vertex(self, vertex_id):
        return self.vertices[self.index_of(vertex_id)]

    def incident_edges(self, vertex_id):
        """Indices of edges touching the vertex, in file order"""
        return [k for k, e in enumerate(self.edges) if e.touches(vertex_id)]

    def degree(self, vertex_id):
        return len(self.incident_edges(vertex_id))

    def with_signs(self, signs):
        """Copy with edge signs replaced (same order as self.edges)"""
        if len(signs) != len(self.edges):
            raise GraphValidationError(f"expected {len(self.edges)} signs, got {len(signs)}")
        edges = tuple(EdgeData(endpoints=e.endpoints, sign=int(s)) for e, s in zip(self.edges, signs))
        return PlumbingGraph(vertices=self.vertices, edges=edges)

    def to_networkx(self):
        """Undirected multigraph; edge keys are edge indices, sign stored as attribute"""
        g = nx.MultiGraph()
        for v in self.vertices:
            g.add_node(v.id, genus=v.genus, euler=v.euler)
        for k, e in enumerate(self.edges):
            g.add_edge(*e.endpoints, key=k, sign=e.sign)
        return g


def validate_graph(graph):
    """
    Check the structural invariants of a plumbing graph

    Raises:
        GraphValidationError: empty graph, duplicate vertex ids, unknown
            endpoints, self-loops, or a disconnected graph
    """
    if not graph.vertices:
        raise GraphValidationError("graph has no vertices")
    seen = set()
    for v in graph.vertices:
        if v.id in seen:
            raise GraphValidationError(f"duplicate vertex id '{v.id}'")
        seen.add(v.id)
    for k, e in enumerate(graph.edges):
        a, b = e.endpoints
        for end in (a, b):
            if end not in seen:
                raise GraphValidationError(f"edge {k} references unknown vertex '{end}'")
        if a == b:
            raise GraphValidationError(f"edge {k} is a self-loop at '{a}'")
    if not nx.is_connected(graph.to_networkx()):
        components = [sorted(c) for c in nx.connected_components(graph.to_networkx())]
        raise GraphValidationError(f"graph is disconnected: components {components}")
    return graph


def make_graph(vertices, edges=()):
    """
    Build and validate a graph from plain tuples

    Args:
        vertices: iterable of (id, genus, euler)
        edges: iterable of (a, b, sign)

    Returns:
        PlumbingGraph
    """
    graph = PlumbingGraph(
        vertices=tuple(VertexData(id=i, genus=g, euler=e) for i, g, e in vertices),
        edges=tuple(EdgeData(endpoints=(a, b), sign=s) for a, b, s in edges),
    )
    return validate_graph(graph)


def flip_vertex(graph, vertex_id):
    """
    Negate the sign of every edge incident to a vertex

    Args:
        graph: PlumbingGraph
        vertex_id: vertex to flip

    Returns:
        PlumbingGraph: new graph in the same orientation class
    """
    graph.index_of(vertex_id)
    signs = [-e.sign if e.touches(vertex_id) else e.sign for e in graph.edges]
    return graph.with_signs(signs)


def flip_vertices(graph, vertex_ids):
    for v in vertex_ids:
        graph = flip_vertex(graph, v)
    return graph


def negate_edge_signs(graph):
    """
    Copy with every edge sign negated

    Same orientation class exactly when every cycle of the graph has even
    length (always on trees).
    """
    return graph.with_signs([-e.sign for e in graph.edges])


def _same_underlying(g1, g2):
    if g1.vertex_ids != g2.vertex_ids or len(g1.edges) != len(g2.edges):
        return False
    return all(set(a.endpoints) == set(b.endpoints) for a, b in zip(g1.edges, g2.edges))


def same_orientation_class(g1, g2):
    """
    True iff the two sign assignments differ by vertex flips

    The ratio tau = sigma1 * sigma2 must be a coboundary: propagate vertex
    flips along a spanning tree and check that every edge agrees.

    Raises:
        GraphValidationError: the underlying multigraphs differ
    """
    if not _same_underlying(g1, g2):
        raise GraphValidationError("underlying graphs differ")
    ratio = [a.sign * b.sign for a, b in zip(g1.edges, g2.edges)]
    flip = {g1.vertices[0].id: 1} if g1.vertices else {}
    for k in spanning_tree(g1):
        a, b = g1.edges[k].endpoints
        if a in flip:
            flip[b] = flip[a] * ratio[k]
        else:
            flip[a] = flip[b] * ratio[k]
    return all(flip[e.endpoints[0]] * flip[e.endpoints[1]] == r for e, r in zip(g1.edges, ratio))


def intersection_matrix(graph):
    """
    Plumbing matrix A: A_vv = e_v, A_vw = sum of edge signs between v and w

    Vertex order is declaration order.
    """
    n = len(graph.vertices)
    index = {v.id: i for i, v in enumerate(graph.vertices)}
    rows = [[0] * n for _ in range(n)]
    for i, v in enumerate(graph.vertices):
        rows[i][i] = v.euler
    for e in graph.edges:
        i, j = index[e.endpoints[0]], index[e.endpoints[1]]
        rows[i][j] += e.sign
        rows[j][i] += e.sign
    return IntMatrix.from_rows(rows)


def betti1(graph):
    return len(graph.edges) - len(graph.vertices) + 1


def spanning_tree(graph):
    """
    Deterministic spanning tree as a list of edge indices in insertion order

    Grown from the lexicographically smallest vertex id; at each step the
    first edge in file order that leaves the current tree is added.
    """
    if not graph.vertices:
        return []
    root = min(graph.vertex_ids)
    inside = {root}
    tree = []
    while len(inside) < len(graph.vertices):
        for k, e in enumerate(graph.edges):
            a, b = e.endpoints
            if (a in inside) != (b in inside):
                tree.append(k)
                inside.update((a, b))
                break
        else:
            raise GraphValidationError("graph is disconnected")
    return tree


def cycle_edges(graph):
    """Edge indices outside the spanning tree, in file order"""
    tree = set(spanning_tree(graph))
    return [k for k in range(len(graph.edges)) if k not in tree]
