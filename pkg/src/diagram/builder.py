"""
Diagram construction

Each vertex becomes two panels joined by its vertical cylinders (the hub
first) and carrying one handle tube per original handle on each side. Red
curves are the boundaries of the product disks {arc} x I; every blue curve
follows its red twin on the left and twists once per vertical cylinder in
the direction of the cylinder sign. Tree edges then merge two drill curves
into one, cycle edges add a commutator pair.
"""

import logging

from diagram.model import (
    Curve,
    Panel,
    PanelArc,
    Station,
    SymbolicDiagram,
    Tube,
    TubePass,
    check_invariants,
    relink,
    reverse_path,
)
from graph.plumbing_graph import cycle_edges, spanning_tree
from planning.drill_planner import predicted_genus, validate_plan
from utils.errors import DiagramError, PlanError

logger = logging.getLogger(__name__)

PREFIX = {"red": "R", "blue": "B"}


def vertical_layout(record):
    """
    Vertical cylinders of a vertex, hub first

    Returns:
        list: (local name, kind, sign, edge index or None)
    """
    edges = [(f"e{k}", "drill", s, k) for k, s in record.edge_drills]
    extras = [(f"x{j}", "drill", s, None) for j, s in enumerate(record.extra_drills)]
    if record.main is not None:
        main = ("main", "main", record.extra_drills[record.main], None)
        return [main] + edges + [x for j, x in enumerate(extras) if j != record.main]
    hub = [t for t in edges if t[3] == record.hub_edge]
    if len(hub) != 1:
        raise PlanError(f"vertex '{record.vertex}' has neither a main cylinder nor a hub edge")
    return hub + [t for t in edges if t[3] != record.hub_edge] + extras


def _strand(color, vertex, name, k):
    return f"{PREFIX[color]}.{vertex}.{name}/{k}"


def _materialize(color, vertex, name, kind, template, tubes):
    """
    Turn a template [("arc", panel) | ("pass", tube, direction)] into a curve

    Pass k gets strand id <curve>/<k>; blue passes twist by the tube's blue twist.
    """
    curve_id = f"{PREFIX[color]}.{vertex}.{name}"
    twin = f"{PREFIX['blue' if color == 'red' else 'red']}.{vertex}.{name}"
    segments = []
    k = 0
    for item in template:
        if item[0] == "arc":
            placeholder = Station(port="", strand="")
            segments.append(PanelArc(panel=item[1], start=placeholder, end=placeholder))
        else:
            _, tube_id, direction = item
            twist = tubes[tube_id].blue_twist if color == "blue" else 0
            segments.append(
                TubePass(tube=tube_id, strand=_strand(color, vertex, name, k), direction=direction, twist=twist)
            )
            k += 1
    return Curve(id=curve_id, color=color, kind=kind, twin=twin, segments=relink(segments, tubes))


def build_vertex_diagram(vertex, record):
    """
    Diagram of one drilled vertex body

    Args:
        vertex: VertexData
        record: VertexPlan of that vertex

    Returns:
        SymbolicDiagram: genus 2g + m - 1 with that many red and blue curves

    Raises:
        PlanError: drill signs do not add up to the Euler number
        DiagramError: no vertical cylinders
    """
    v = vertex.id
    if sum(record.drill_signs) != vertex.euler:
        raise PlanError(f"vertex '{v}': drill signs {record.drill_signs} do not add up to {vertex.euler}")
    layout = vertical_layout(record)
    if not layout:
        raise DiagramError(f"vertex '{v}' has no cylinders")

    top, bottom = f"{v}:top", f"{v}:bottom"
    hub = f"{v}:{layout[0][0]}"
    handles = range(1, vertex.genus + 1)

    def port(side, local):
        return f"{v}:{side}:{local}"

    feet = [f"h{i}{end}" for i in handles for end in "ab"]
    panels = tuple(
        Panel(
            id=pid,
            vertex=v,
            side=side,
            ports=tuple(port(side, t[0]) for t in layout) + tuple(port(side, f) for f in feet),
        )
        for pid, side in ((top, "top"), (bottom, "bottom"))
    )

    tubes = {}
    for local, kind, sign, edge in layout:
        tubes[f"{v}:{local}"] = Tube(
            id=f"{v}:{local}",
            kind=kind,
            sign=sign,
            ports=(port("top", local), port("bottom", local)),
            tag=f"edge:{edge}" if edge is not None else None,
        )
    for i in handles:
        for side in ("top", "bottom"):
            tid = f"{v}:{side}:h{i}"
            tubes[tid] = Tube(id=tid, kind="handle", sign=0, ports=(port(side, f"h{i}a"), port(side, f"h{i}b")))

    curves = []
    hub_ring = []
    rings = {}

    def s(color, name, k):
        return _strand(color, v, name, k)

    for i in handles:
        a, b = f"a{i}", f"b{i}"
        top_h, bottom_h = f"{v}:top:h{i}", f"{v}:bottom:h{i}"
        # a_i crosses the handle on both sides, b_i runs around the foot h{i}a
        a_template = [
            ("arc", top),
            ("pass", top_h, "forward"),
            ("arc", top),
            ("pass", hub, "forward"),
            ("arc", bottom),
            ("pass", bottom_h, "backward"),
            ("arc", bottom),
            ("pass", hub, "backward"),
        ]
        b_template = [("arc", top), ("pass", hub, "forward"), ("arc", bottom), ("pass", hub, "backward")]
        for name, kind, template in ((a, "handle_meridian", a_template), (b, "handle_longitude", b_template)):
            for color in ("red", "blue"):
                curves.append(_materialize(color, v, name, kind, template, tubes))
        hub_ring += [
            s("blue", b, 1),
            s("red", b, 1),
            s("blue", a, 3),
            s("red", a, 3),
            s("red", b, 0),
            s("blue", b, 0),
            s("red", a, 1),
            s("blue", a, 1),
        ]
        rings[top_h] = [s("red", a, 0), s("blue", a, 0)]
        rings[bottom_h] = [s("blue", a, 2), s("red", a, 2)]

    for local, _, _, _ in layout[1:]:
        tid = f"{v}:{local}"
        template = [("arc", top), ("pass", tid, "forward"), ("arc", bottom), ("pass", hub, "backward")]
        for color in ("red", "blue"):
            curves.append(_materialize(color, v, local, "drill", template, tubes))
        hub_ring += [s("blue", local, 1), s("red", local, 1)]
        rings[tid] = [s("red", local, 0), s("blue", local, 0)]
    rings[hub] = hub_ring

    tube_list = tuple(t.model_copy(update={"stations": tuple(rings.get(t.id, ()))}) for t in tubes.values())
    genus = 2 * vertex.genus + len(layout) - 1
    logger.debug("vertex %s: %d cylinders, %d handles, genus %d", v, len(layout), vertex.genus, genus)
    return SymbolicDiagram(genus=genus, panels=panels, tubes=tube_list, curves=tuple(curves))


def disjoint_union(diagrams):
    return SymbolicDiagram(
        genus=sum(d.genus for d in diagrams),
        panels=tuple(p for d in diagrams for p in d.panels),
        tubes=tuple(t for d in diagrams for t in d.tubes),
        curves=tuple(c for d in diagrams for c in d.curves),
    )


def _tagged_tube(diagram, vertex, index):
    tube_id = f"{vertex}:e{index}"
    if not diagram.has_tube(tube_id):
        raise DiagramError(f"vertex '{vertex}' has no unglued drill tube for edge {index}")
    return diagram.tube(tube_id)


def _through(diagram, tube_id, color):
    """The unique curve of a colour passing a tube, with the segment index"""
    found = [
        (c, i)
        for c in diagram.curves
        if c.color == color
        for i, s in enumerate(c.segments)
        if s.kind == "pass" and s.tube == tube_id
    ]
    if len(found) != 1:
        raise DiagramError(f"tube '{tube_id}' carries {len(found)} {color} strands, expected 1")
    return found[0]


def _cut(curve, index):
    """Open the curve at a pass: starts with the arc after it, ends with the arc before it"""
    segs = list(curve.segments)
    return segs[index + 1 :] + segs[:index]


def _same_component(diagram, tube_a, tube_b):
    component = diagram.component_of()
    port_panel = diagram.port_panel
    return component[port_panel[tube_a.ports[0]]] == component[port_panel[tube_b.ports[0]]]


def _replace_curves(curves, old_ids, new_curve):
    """Put new_curve where the first of old_ids was and drop the rest"""
    out = []
    placed = False
    for c in curves:
        if c.id in old_ids:
            if not placed:
                out.append(new_curve)
                placed = True
        else:
            out.append(c)
    return out


def _edge_merge(diagram, edge, index, genus):
    """
    Replace the two drill tubes of an edge by an edge_top and an edge_bottom
    tube and merge the red (and blue) curves through them

    The merged red runs X' (X opened at its drill pass), the edge tube on the
    level where X' ends, Y' oriented to start on that level, and back through
    the other edge tube. Blue does the same along its twin's path with twist
    sigma on edge_bottom.
    """
    v, w = edge.endpoints
    dv, dw = _tagged_tube(diagram, v, index), _tagged_tube(diagram, w, index)
    if dv.sign != edge.sign or dw.sign != edge.sign:
        raise DiagramError(f"drill tubes of edge {index} do not carry the edge sign {edge.sign}")

    x, ix = _through(diagram, dv.id, "red")
    y, iy = _through(diagram, dw.id, "red")
    xb, ixb = _through(diagram, dv.id, "blue")
    yb, iyb = _through(diagram, dw.id, "blue")
    if x.id == y.id:
        raise DiagramError(f"both drill tubes of edge {index} lie on the red curve '{x.id}'")
    if xb.id != x.twin or yb.id != y.twin or ixb != ix or iyb != iy:
        raise DiagramError(f"blue curves at edge {index} are not aligned with their red twins")

    sides = {p: panel.side for panel in diagram.panels for p in panel.ports}
    tag = f"edge:{index}"
    new = {
        "top": Tube(id=f"e{index}:top", kind="edge_top", sign=edge.sign, ports=(dv.ports[0], dw.ports[0]), tag=tag),
        "bottom": Tube(
            id=f"e{index}:bottom", kind="edge_bottom", sign=edge.sign, ports=(dv.ports[1], dw.ports[1]), tag=tag
        ),
    }
    level_end = sides[x.segments[ix].entry_port(dv)]
    level_start = sides[x.segments[ix].exit_port(dv)]

    tubes = {t.id: t for t in diagram.tubes if t.id not in (dv.id, dw.id)}
    tubes.update({t.id: t for t in new.values()})

    def assemble(cx, icx, cy, icy, color):
        head = _cut(cx, icx)
        tail = _cut(cy, icy)
        if sides[cy.segments[icy].exit_port(dw)] != level_end:
            tail = reverse_path(tail)
        t_end, t_start = new[level_end], new[level_start]
        blue = color == "blue"
        there = TubePass(
            tube=t_end.id,
            strand=f"{t_end.id}/{PREFIX[color]}",
            direction="forward",
            twist=t_end.blue_twist if blue else 0,
        )
        back = TubePass(
            tube=t_start.id,
            strand=f"{t_start.id}/{PREFIX[color]}",
            direction="backward",
            twist=t_start.blue_twist if blue else 0,
        )
        return relink(head + [there] + tail + [back], tubes)

    red_id, blue_id = (x.id, xb.id) if x.id <= y.id else (y.id, yb.id)
    red = Curve(id=red_id, color="red", kind="drill", twin=blue_id, segments=assemble(x, ix, y, iy, "red"))
    blue = Curve(id=blue_id, color="blue", kind="drill", twin=red_id, segments=assemble(xb, ixb, yb, iyb, "blue"))
    for t in new.values():
        tubes[t.id] = t.model_copy(update={"stations": (f"{t.id}/R", f"{t.id}/B")})

    tube_list = []
    for t in diagram.tubes:
        if t.id == dv.id:
            tube_list += [tubes[new["top"].id], tubes[new["bottom"].id]]
        elif t.id != dw.id:
            tube_list.append(tubes[t.id])
    curves = _replace_curves(diagram.curves, {x.id, y.id}, red)
    curves = _replace_curves(curves, {xb.id, yb.id}, blue)
    return SymbolicDiagram(genus=genus, panels=diagram.panels, tubes=tuple(tube_list), curves=tuple(curves))


def glue_tree_edge(diagram, edge, index):
    """
    Join two components along a spanning-tree edge

    Args:
        diagram: SymbolicDiagram containing both endpoint vertices
        edge: EdgeData
        index: edge index in the graph (tags its drill tubes)

    Returns:
        SymbolicDiagram: genus and curve counts lowered by one

    Raises:
        DiagramError: missing tagged tube or endpoints already connected
    """
    v, w = edge.endpoints
    dv, dw = _tagged_tube(diagram, v, index), _tagged_tube(diagram, w, index)
    if _same_component(diagram, dv, dw):
        raise DiagramError(f"edge {index} joins an already connected diagram; it must be glued as a cycle edge")
    glued = _edge_merge(diagram, edge, index, diagram.genus - 1)
    logger.debug("tree edge %d (%s-%s): genus %d", index, v, w, glued.genus)
    return glued


def _pair_order(ring, red, blue):
    """
    Rotate a ring so the (red, blue) pair sits at its front

    Returns:
        tuple: (rotated ring, ["R", "B"] or ["B", "R"])
    """
    n = len(ring)
    try:
        ir, ib = ring.index(red), ring.index(blue)
    except ValueError:
        raise DiagramError(f"strands {red}, {blue} missing from ring") from None
    if (ir + 1) % n == ib:
        lo, order = ir, ["R", "B"]
    elif (ib + 1) % n == ir:
        lo, order = ib, ["B", "R"]
    else:
        raise DiagramError(f"strands {red} and {blue} are not adjacent")
    return ring[lo:] + ring[:lo], order


def _carry(block, exit_pass, exit_tube, entry_pass, entry_tube):
    """Ring order of a parallel band in the next tube along a panel arc"""
    exit_port = exit_pass.exit_port(exit_tube)
    panel = block if exit_port == exit_tube.ports[0] else block[::-1]
    arriving = panel[::-1]
    entry_port = entry_pass.entry_port(entry_tube)
    return arriving if entry_port == entry_tube.ports[0] else arriving[::-1]


def _carry_back(block, exit_pass, exit_tube, entry_pass, entry_tube):
    entry_port = entry_pass.entry_port(entry_tube)
    arriving = block if entry_port == entry_tube.ports[0] else block[::-1]
    panel = arriving[::-1]
    exit_port = exit_pass.exit_port(exit_tube)
    return panel if exit_port == exit_tube.ports[0] else panel[::-1]


def glue_cycle_edge(diagram, edge, index):
    """
    Glue a cycle edge inside one connected diagram

    The red curves X, Y through the two drill tubes are merged as for a tree
    edge. The second red curve is the boundary of a neighbourhood of X' plus
    the two ports it ends on: a copy of X' on either side, closed by a loop
    around each port. The blue pair is built the same way from X's twin.

    Returns:
        SymbolicDiagram: same genus, same curve counts

    Raises:
        DiagramError: missing tagged tube, endpoints in different components,
            or both tubes on one red curve
    """
    v, w = edge.endpoints
    dv, dw = _tagged_tube(diagram, v, index), _tagged_tube(diagram, w, index)
    if not _same_component(diagram, dv, dw):
        raise DiagramError(f"edge {index} joins different components; glue the spanning-tree edges first")

    x, ix = _through(diagram, dv.id, "red")
    y, iy = _through(diagram, dw.id, "red")
    if x.id == y.id:
        raise DiagramError(f"both drill tubes of edge {index} lie on the red curve '{x.id}'")
    src, i_src, tube_src = (x, ix, dv) if x.id <= y.id else (y, iy, dw)
    src_b, i_src_b = _through(diagram, tube_src.id, "blue")

    middle = _cut(src, i_src)[1:-1]
    middle_b = _cut(src_b, i_src_b)[1:-1]
    passes = [s for s in middle if s.kind == "pass"]
    passes_b = [s for s in middle_b if s.kind == "pass"]
    if len(passes) != len(passes_b) or any(a.tube != b.tube for a, b in zip(passes, passes_b)):
        raise DiagramError(f"curve '{src.id}' and its twin are not parallel")

    tubes = dict(diagram.tube_map)
    red_id, blue_id = f"R.cyc{index}", f"B.cyc{index}"
    labels = [
        {
            "R": p.strand,
            "B": pb.strand,
            "Xp": f"{red_id}/p{i}",
            "Xm": f"{red_id}/m{i}",
            "Zp": f"{blue_id}/p{i}",
            "Zm": f"{blue_id}/m{i}",
        }
        for i, (p, pb) in enumerate(zip(passes, passes_b))
    ]

    # band order [Xm, Zm, pair, Zp, Xp] fixed in the one crowded ring, carried along the panels
    start = next((i for i, p in enumerate(passes) if len(tubes[p.tube].stations) > 2), 0)
    blocks = [None] * len(passes)
    # blue sits left of red: after it on a forward pass, before it on a backward one
    left = ["R", "B"] if passes[start].direction == "forward" else ["B", "R"]
    blocks[start] = ["Xm", "Zm"] + left + ["Zp", "Xp"]
    for i in range(start, len(passes) - 1):
        p, q = passes[i], passes[i + 1]
        blocks[i + 1] = _carry(blocks[i], p, tubes[p.tube], q, tubes[q.tube])
    for i in range(start, 0, -1):
        p, q = passes[i - 1], passes[i]
        blocks[i - 1] = _carry_back(blocks[i], p, tubes[p.tube], q, tubes[q.tube])

    for i, p in enumerate(passes):
        tube = tubes[p.tube]
        ring, order = _pair_order(list(tube.stations), p.strand, passes_b[i].strand)
        center = [label for label in blocks[i] if label in ("R", "B")]
        left = ["R", "B"] if p.direction == "forward" else ["B", "R"]
        if center != left or (len(ring) > 2 and center != order):
            raise DiagramError(f"parallel copies of '{src.id}' cannot be ordered consistently in tube '{tube.id}'")
        tubes[tube.id] = tube.model_copy(update={"stations": tuple(labels[i][x] for x in blocks[i]) + tuple(ring[2:])})

    port_panel = diagram.port_panel
    far = passes[-1].exit_port(tubes[passes[-1].tube])
    near = passes[0].entry_port(tubes[passes[0].tube])
    placeholder = Station(port="", strand="")

    def copy(path, key, color):
        out = []
        i = 0
        for seg in path:
            if seg.kind == "pass":
                twist = tubes[seg.tube].blue_twist if color == "blue" else 0
                out.append(seg.model_copy(update={"strand": labels[i][key], "twist": twist}))
                i += 1
            else:
                out.append(seg)
        return out

    def commutator(path, plus, minus, color):
        loop_far = PanelArc(panel=port_panel[far], start=placeholder, end=placeholder)
        loop_near = PanelArc(panel=port_panel[near], start=placeholder, end=placeholder)
        segs = copy(path, plus, color) + [loop_far] + reverse_path(copy(path, minus, color)) + [loop_near]
        return relink(segs, tubes)

    red_segments = commutator(middle, "Xp", "Xm", "red")
    blue_segments = commutator(middle_b, "Zp", "Zm", "blue")
    red2 = Curve(id=red_id, color="red", kind="cycle_commutator", twin=blue_id, segments=red_segments)
    blue2 = Curve(id=blue_id, color="blue", kind="cycle_commutator", twin=red_id, segments=blue_segments)

    tube_list = tuple(tubes[t.id] for t in diagram.tubes)
    staged = SymbolicDiagram(
        genus=diagram.genus, panels=diagram.panels, tubes=tube_list, curves=diagram.curves + (red2, blue2)
    )
    glued = _edge_merge(staged, edge, index, diagram.genus)
    logger.debug("cycle edge %d (%s-%s): commutator copies of %s", index, v, w, src.id)
    return glued


def build(graph, plan):
    """
    Assemble the full diagram: vertices, spanning-tree edges, then cycle edges

    Returns:
        SymbolicDiagram: genus equal to predicted_genus(graph, plan)

    Raises:
        PlanError: invalid plan
        DiagramError: a gluing precondition or a diagram invariant fails
    """
    validate_plan(graph, plan)
    diagram = disjoint_union([build_vertex_diagram(v, plan.entry(v.id)) for v in graph.vertices])
    for k in spanning_tree(graph):
        before = diagram.genus
        diagram = glue_tree_edge(diagram, graph.edges[k], k)
        if diagram.euler_genus() != before - 1:
            raise DiagramError(f"genus bookkeeping failed after tree edge {k}")
    for k in cycle_edges(graph):
        before = diagram.genus
        diagram = glue_cycle_edge(diagram, graph.edges[k], k)
        if diagram.euler_genus() != before:
            raise DiagramError(f"genus bookkeeping failed after cycle edge {k}")
    expected = predicted_genus(graph, plan)
    if diagram.genus != expected:
        raise DiagramError(f"built genus {diagram.genus} differs from predicted genus {expected}")
    return check_invariants(diagram)
