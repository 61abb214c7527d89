"""
Combinatorial maps (rotation systems)

Edge e has darts 2e (at its tail) and 2e + 1 (at its head); opposite(d) is
d ^ 1. Each vertex lists its darts counter-clockwise. Faces are the orbits
of d -> rotation_next(opposite(d)).
"""

import logging

import networkx as nx

from utils.errors import SurfaceError

logger = logging.getLogger(__name__)


def opposite(dart):
    return dart ^ 1


class CombinatorialMap:
    """Closed oriented surface given by a graph and a rotation at every vertex"""

    def __init__(self):
        self.rotations = []
        self.vertex_labels = []
        self.edge_labels = []
        # curve id -> edges along the curve
        self.curve_edges = {}
        self.curve_colors = {}
        self.crossings = []
        self._vp = None
        self._dart_vertex = None

    def add_vertex(self, label=None):
        self.rotations.append([])
        self.vertex_labels.append(label)
        self._vp = None
        return len(self.rotations) - 1

    def add_edge(self, label=None):
        """
        Args:
            label: (curve id, colour) for curve edges, None otherwise

        Returns:
            int: edge index
        """
        self.edge_labels.append(label)
        if label is not None:
            curve, color = label
            self.curve_edges.setdefault(curve, []).append(len(self.edge_labels) - 1)
            self.curve_colors[curve] = color
        self._vp = None
        return len(self.edge_labels) - 1

    def set_rotation(self, vertex, darts):
        self.rotations[vertex] = list(darts)
        self._vp = None

    def _index(self):
        if self._vp is not None:
            return
        n = 2 * len(self.edge_labels)
        vp = [None] * n
        where = [None] * n
        for v, rot in enumerate(self.rotations):
            for i, d in enumerate(rot):
                if d >= n or where[d] is not None:
                    raise SurfaceError(f"dart {d} placed twice or unknown")
                where[d] = v
                vp[d] = rot[(i + 1) % len(rot)]
        missing = [d for d in range(n) if where[d] is None]
        if missing:
            raise SurfaceError(f"{len(missing)} darts have no vertex (first: {missing[0]})")
        self._vp, self._dart_vertex = vp, where

    def rotation_next(self, dart):
        self._index()
        return self._vp[dart]

    def dart_vertex(self, dart):
        self._index()
        return self._dart_vertex[dart]

    @property
    def num_vertices(self):
        return len(self.rotations)

    @property
    def num_edges(self):
        return len(self.edge_labels)

    def faces(self):
        """Dart cycles of the face permutation"""
        self._index()
        seen = [False] * (2 * self.num_edges)
        out = []
        for start in range(len(seen)):
            if seen[start]:
                continue
            cycle = []
            d = start
            while not seen[d]:
                seen[d] = True
                cycle.append(d)
                d = self._vp[opposite(d)]
            out.append(cycle)
        return out

    @property
    def num_faces(self):
        return len(self.faces())

    def euler_characteristic(self):
        return self.num_vertices - self.num_edges + self.num_faces

    def to_networkx(self):
        self._index()
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.num_vertices))
        for e in range(self.num_edges):
            g.add_edge(self._dart_vertex[2 * e], self._dart_vertex[2 * e + 1], key=e)
        return g

    def connected_components(self):
        """Vertex sets, ordered by smallest vertex"""
        return sorted((set(c) for c in nx.connected_components(self.to_networkx())), key=min)

    def component_characteristics(self):
        """Euler characteristic of every connected component"""
        self._index()
        components = self.connected_components()
        owner = {v: i for i, comp in enumerate(components) for v in comp}
        chi = [len(comp) for comp in components]
        for e in range(self.num_edges):
            chi[owner[self._dart_vertex[2 * e]]] -= 1
        for face in self.faces():
            chi[owner[self._dart_vertex[face[0]]]] += 1
        return chi

    def curve_cycle(self, curve):
        """
        Walk a curve once around

        Returns:
            list: (vertex, incoming dart, outgoing dart) per vertex on the curve
        """
        self._index()
        edges = set(self.curve_edges.get(curve, ()))
        if not edges:
            return []
        first = min(edges)
        out = []
        d_out = 2 * first
        for _ in range(len(edges)):
            d_in = opposite(d_out)
            v = self._dart_vertex[d_in]
            candidates = [d for d in self.rotations[v] if d // 2 in edges and d != d_in]
            if len(candidates) != 1:
                raise SurfaceError(f"curve '{curve}' meets vertex {v} in {len(candidates) + 1} darts")
            d_out = candidates[0]
            out.append((v, d_in, d_out))
        if d_out != 2 * first:
            raise SurfaceError(f"curve '{curve}' is not a single closed cycle")
        return out

    def cut(self, curves):
        """
        Cut the surface along pairwise disjoint curves and cap every new
        boundary circle with a disc

        Each curve vertex with rotation (a, X..., b, Y...) (a incoming, b
        outgoing) splits into (a, X..., b) and (b', Y..., a'), where primed
        darts belong to a duplicate of the curve.

        Returns:
            CombinatorialMap: a new map; curve labels are not carried over
        """
        out = CombinatorialMap()
        for label in self.vertex_labels:
            out.add_vertex(label)
        for _ in self.edge_labels:
            out.add_edge()
        rotations = [list(r) for r in self.rotations]
        for curve in curves:
            cycle = self.curve_cycle(curve)
            # duplicate of the edge leaving each vertex of the cycle
            twins = {d_out // 2: out.add_edge() for _, _, d_out in cycle}
            m = len(cycle)
            for i, (v, d_in, d_out) in enumerate(cycle):
                rot = rotations[v]
                start = rot.index(d_in)
                rot = rot[start:] + rot[:start]
                split = rot.index(d_out)
                near, far = rot[: split + 1], rot[split + 1 :]
                prev_edge = cycle[(i - 1) % m][2] // 2
                b_twin = 2 * twins[d_out // 2] + (d_out & 1)
                a_twin = 2 * twins[prev_edge] + (d_in & 1)
                rotations[v] = near
                out.add_vertex(("cut", self.vertex_labels[v]))
                rotations.append([b_twin] + far + [a_twin])
        for v, rot in enumerate(rotations):
            out.set_rotation(v, rot)
        return out


def surface_genus(m):
    """
    Genus of a connected map from V - E + F = 2 - 2G

    Raises:
        SurfaceError: the map is disconnected or not closed
    """
    components = m.connected_components()
    if len(components) != 1:
        raise SurfaceError(f"map has {len(components)} components")
    chi = m.euler_characteristic()
    if chi % 2 or chi > 2:
        raise SurfaceError(f"Euler characteristic {chi} is not that of a closed oriented surface")
    return (2 - chi) // 2
