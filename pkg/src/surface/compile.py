"""
Symbolic diagram -> combinatorial map

Every port becomes a circle through one vertex per strand (or a single
anchor vertex when the tube is empty). Strands run through their tube as
chains of edges broken at the red-blue crossings, and panel arcs join the
stations they connect. A station's darts, counter-clockwise, are: circle
edge to the next station, panel arc, circle edge from the previous station,
tube strand.
"""

import logging
from collections import defaultdict

from diagram.model import ring_at
from surface.combinatorial_map import CombinatorialMap
from surface.crossings import crossing_census, tube_strands
from utils.errors import CompileError

logger = logging.getLogger(__name__)

STATION_ORDER = ("next", "arc", "prev", "tube")


def compile_diagram(diagram):
    """
    Materialize the surface and both curve systems

    Args:
        diagram: SymbolicDiagram satisfying check_invariants

    Returns:
        CombinatorialMap: with `crossings` (list of CrossingRecord) attached

    Raises:
        CompileError: same-colour strands cross, a ring is malformed, or a
            tube is empty while the diagram has curves
    """
    if diagram.curves:
        empty = [t.id for t in diagram.tubes if not t.stations]
        if empty:
            raise CompileError(f"tubes {empty} carry no strands in a diagram with curves")

    census = crossing_census(diagram)
    geometry = tube_strands(diagram)
    curve_of = {s.strand: (s.curve, s.color) for strands in geometry.values() for s in strands}
    m = CombinatorialMap()
    stations = {}
    parts = defaultdict(dict)

    by_tube = defaultdict(list)
    for record in census:
        by_tube[record.tube].append(record)

    for t in diagram.tubes:
        if not t.stations:
            anchors = [m.add_vertex(("anchor", p)) for p in t.ports]
            loops = [m.add_edge() for _ in t.ports]
            seam = m.add_edge()
            for end, (a, loop) in enumerate(zip(anchors, loops)):
                m.set_rotation(a, [2 * loop, 2 * loop + 1, 2 * seam + end])
            continue

        for port in t.ports:
            order = ring_at(t, port)
            for strand in order:
                stations[(port, strand)] = m.add_vertex(("station", port, strand))
            n = len(order)
            for i in range(n):
                e = m.add_edge()
                parts[(port, order[i])]["next"] = 2 * e
                parts[(port, order[(i + 1) % n])]["prev"] = 2 * e + 1

        # crossing vertices; darts per strand filled in while chaining
        crossing_darts = []
        along = defaultdict(list)
        winding = {s.strand: s.winding for s in geometry[t.id]}
        for record in by_tube[t.id]:
            c = m.add_vertex(("crossing", t.id, record.sign))
            crossing_darts.append((c, record, {}))
            along[record.red_strand].append((record.position, len(crossing_darts) - 1))
            along[record.blue_strand].append((record.position, len(crossing_darts) - 1))

        first, second = t.ports
        for strand in t.stations:
            label = curve_of[strand]
            points = sorted(along[strand])
            tail = ("station", (first, strand))
            for _, k in points + [(None, None)]:
                e = m.add_edge(label)
                if tail[0] == "station":
                    parts[tail[1]]["tube"] = 2 * e
                else:
                    crossing_darts[tail[1]][2][(strand, "fwd")] = 2 * e
                if k is None:
                    parts[(second, strand)]["tube"] = 2 * e + 1
                else:
                    crossing_darts[k][2][(strand, "back")] = 2 * e + 1
                    tail = ("crossing", k)

        for c, record, darts in crossing_darts:
            red, blue = record.red_strand, record.blue_strand
            steep, shallow = (red, blue) if winding[red] > winding[blue] else (blue, red)
            m.set_rotation(
                c,
                [darts[(shallow, "fwd")], darts[(steep, "fwd")], darts[(shallow, "back")], darts[(steep, "back")]],
            )

    for curve in diagram.curves:
        for arc in curve.arcs:
            e = m.add_edge((curve.id, curve.color))
            start, end = (arc.start.port, arc.start.strand), (arc.end.port, arc.end.strand)
            if "arc" in parts[start] or "arc" in parts[end]:
                raise CompileError(f"station {start} or {end} carries two panel arcs")
            parts[start]["arc"] = 2 * e
            parts[end]["arc"] = 2 * e + 1

    for key, v in stations.items():
        missing = [p for p in STATION_ORDER if p not in parts[key]]
        if missing:
            raise CompileError(f"station {key} has no {', '.join(missing)} dart")
        m.set_rotation(v, [parts[key][p] for p in STATION_ORDER])

    m.crossings = census
    logger.debug(
        "compiled: V=%d E=%d F=%d, %d crossings", m.num_vertices, m.num_edges, m.num_faces, len(census)
    )
    return m


def crossing_vertices(m):
    return [v for v, label in enumerate(m.vertex_labels) if label and label[0] == "crossing"]
