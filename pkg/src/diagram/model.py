"""
Symbolic Heegaard diagrams

Panels are spheres with holes (ports); tubes are annuli joining two ports.
Curves alternate between arcs drawn on a panel and passes through a tube.
Each tube keeps one ring of strand ids: read in that order around its first
port and in reverse order around its second one.
"""

from collections import Counter
from typing import Annotated, Literal, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from utils.config import DIAGRAM_FORMAT_VERSION
from utils.errors import DiagramError

TubeKind = Literal["main", "drill", "edge_top", "edge_bottom", "handle"]
CurveKind = Literal["handle_meridian", "handle_longitude", "drill", "cycle_commutator"]

# blue curves pick up the tube sign as twist on these kinds, 0 elsewhere
TWISTED_KINDS = ("main", "drill", "edge_bottom")


class Panel(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    vertex: str
    side: Literal["top", "bottom"]
    ports: tuple[str, ...]


class Tube(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    kind: TubeKind
    sign: Literal[-1, 0, 1]
    ports: tuple[str, str]
    stations: tuple[str, ...] = ()
    # "edge:<k>" for drill tubes reserved for edge k and for the tubes that replace them
    tag: str | None = None

    @property
    def blue_twist(self):
        return self.sign if self.kind in TWISTED_KINDS else 0


class Station(BaseModel):
    """Where a strand meets a port"""

    model_config = ConfigDict(frozen=True)

    port: str
    strand: str


class PanelArc(BaseModel):
    """Arc on a panel; serialized with "from" / "to" keys"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    kind: Literal["arc"] = "arc"
    panel: str
    start: Station = Field(..., alias="from")
    end: Station = Field(..., alias="to")


class TubePass(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["pass"] = "pass"
    tube: str
    strand: str
    direction: Literal["forward", "backward"] = "forward"
    twist: int = 0

    def entry_port(self, tube):
        return tube.ports[0] if self.direction == "forward" else tube.ports[1]

    def exit_port(self, tube):
        return tube.ports[1] if self.direction == "forward" else tube.ports[0]

    def reversed(self):
        return self.model_copy(update={"direction": "backward" if self.direction == "forward" else "forward"})


Segment = Annotated[Union[PanelArc, TubePass], Field(discriminator="kind")]


class Curve(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    color: Literal["red", "blue"]
    kind: CurveKind
    twin: str
    segments: tuple[Segment, ...]

    @property
    def passes(self):
        return [s for s in self.segments if s.kind == "pass"]

    @property
    def arcs(self):
        return [s for s in self.segments if s.kind == "arc"]


class SymbolicDiagram(BaseModel):
    model_config = ConfigDict(frozen=True)

    version: int = DIAGRAM_FORMAT_VERSION
    genus: int
    panels: tuple[Panel, ...] = ()
    tubes: tuple[Tube, ...] = ()
    curves: tuple[Curve, ...] = ()

    def tube(self, tube_id):
        for t in self.tubes:
            if t.id == tube_id:
                return t
        raise DiagramError(f"no tube '{tube_id}'")

    def curve(self, curve_id):
        for c in self.curves:
            if c.id == curve_id:
                return c
        raise DiagramError(f"no curve '{curve_id}'")

    def has_tube(self, tube_id):
        return any(t.id == tube_id for t in self.tubes)

    @property
    def tube_map(self):
        return {t.id: t for t in self.tubes}

    @property
    def port_panel(self):
        return {p: panel.id for panel in self.panels for p in panel.ports}

    def red_curves(self):
        return [c for c in self.curves if c.color == "red"]

    def blue_curves(self):
        return [c for c in self.curves if c.color == "blue"]

    def panel_graph(self):
        """Panels as nodes, one edge per tube"""
        port_panel = self.port_panel
        g = nx.MultiGraph()
        g.add_nodes_from(p.id for p in self.panels)
        for t in self.tubes:
            g.add_edge(port_panel[t.ports[0]], port_panel[t.ports[1]], key=t.id)
        return g

    def component_of(self):
        """panel id -> component index"""
        out = {}
        for i, comp in enumerate(sorted(nx.connected_components(self.panel_graph()), key=min)):
            for p in comp:
                out[p] = i
        return out

    def euler_genus(self):
        """#components - 1/2 * sum over panels of (2 - |ports|)"""
        if not self.panels:
            return 0
        components = nx.number_connected_components(self.panel_graph())
        total = sum(2 - len(p.ports) for p in self.panels)
        return components - total // 2


def ring_at(tube, port):
    """Strand order around a tube port, in the panel's boundary orientation"""
    if port == tube.ports[0]:
        return list(tube.stations)
    if port == tube.ports[1]:
        return list(reversed(tube.stations))
    raise DiagramError(f"port '{port}' is not an end of tube '{tube.id}'")


def relink(segments, tubes):
    """
    Recompute every arc endpoint from the neighbouring passes

    Args:
        segments: cyclic list of PanelArc/TubePass, alternating
        tubes: tube id -> Tube

    Returns:
        tuple: segments with arcs pointing at (exit port, strand) of the previous
            pass and (entry port, strand) of the next one
    """
    n = len(segments)
    out = list(segments)
    for i, seg in enumerate(segments):
        if seg.kind != "arc":
            continue
        prev = segments[(i - 1) % n]
        nxt = segments[(i + 1) % n]
        if prev.kind != "pass" or nxt.kind != "pass":
            raise DiagramError("arcs and passes must alternate")
        start = Station(port=prev.exit_port(tubes[prev.tube]), strand=prev.strand)
        end = Station(port=nxt.entry_port(tubes[nxt.tube]), strand=nxt.strand)
        out[i] = seg.model_copy(update={"start": start, "end": end})
    return tuple(out)


def reverse_path(segments):
    """Traverse an open or closed segment sequence backwards"""
    out = []
    for seg in reversed(segments):
        if seg.kind == "pass":
            out.append(seg.reversed())
        else:
            out.append(seg.model_copy(update={"start": seg.end, "end": seg.start}))
    return out


def skeleton(curve):
    """Tubes, directions and panels visited, without strand ids or twists"""
    return tuple((s.tube, s.direction) if s.kind == "pass" else (s.panel,) for s in curve.segments)


def check_invariants(diagram):
    """
    Verify the structural invariants of a symbolic diagram

    Raises:
        DiagramError: listing every violated invariant
    """
    problems = []
    tubes = diagram.tube_map
    panels = {p.id: p for p in diagram.panels}
    port_panel = diagram.port_panel

    port_count = Counter(p for panel in diagram.panels for p in panel.ports)
    problems += [f"port '{p}' appears on {n} panels" for p, n in port_count.items() if n > 1]
    used_ports = Counter(p for t in diagram.tubes for p in t.ports)
    for p in port_count:
        if used_ports[p] != 1:
            problems.append(f"port '{p}' is attached to {used_ports[p]} tubes")
    for p in used_ports:
        if p not in port_panel:
            problems.append(f"tube port '{p}' is on no panel")
    if problems:
        raise DiagramError("; ".join(problems))

    for t in diagram.tubes:
        a, b = (panels[port_panel[p]] for p in t.ports)
        if t.kind in ("main", "drill"):
            ok = a.vertex == b.vertex and a.side == "top" and b.side == "bottom"
        elif t.kind == "handle":
            ok = a.id == b.id
        else:
            side = "top" if t.kind == "edge_top" else "bottom"
            ok = a.vertex != b.vertex and a.side == side and b.side == side
        if not ok:
            problems.append(f"tube '{t.id}' of kind {t.kind} joins {a.id} and {b.id}")
        if (t.sign == 0) != (t.kind == "handle"):
            problems.append(f"tube '{t.id}' of kind {t.kind} has sign {t.sign}")

    passes_by_tube = {t.id: [] for t in diagram.tubes}
    ids = Counter(c.id for c in diagram.curves)
    problems += [f"curve id '{c}' used {n} times" for c, n in ids.items() if n > 1]
    by_id = {c.id: c for c in diagram.curves}

    for c in diagram.curves:
        segs = c.segments
        if not segs or len(segs) % 2:
            problems.append(f"curve '{c.id}' has {len(segs)} segments")
            continue
        kinds = [s.kind for s in segs]
        if any(kinds[i] == kinds[(i + 1) % len(kinds)] for i in range(len(kinds))):
            problems.append(f"curve '{c.id}' does not alternate arcs and passes")
            continue
        for i, s in enumerate(segs):
            if s.kind == "pass":
                if s.tube not in tubes:
                    problems.append(f"curve '{c.id}' passes unknown tube '{s.tube}'")
                    continue
                passes_by_tube[s.tube].append((c, s))
                tube = tubes[s.tube]
                expected = 0 if c.color == "red" else tube.blue_twist
                if s.twist != expected:
                    problems.append(
                        f"{c.color} curve '{c.id}' has twist {s.twist} in tube '{s.tube}' (expected {expected})"
                    )
        if any(s.kind == "pass" and s.tube not in tubes for s in segs):
            continue
        try:
            relinked = relink(segs, tubes)
        except DiagramError as e:
            problems.append(f"curve '{c.id}': {e}")
            continue
        if relinked != segs:
            problems.append(f"curve '{c.id}' has arcs that do not meet its passes")
        for s in c.arcs:
            panel = panels.get(s.panel)
            if panel is None or s.start.port not in panel.ports or s.end.port not in panel.ports:
                problems.append(f"curve '{c.id}' has an arc off panel '{s.panel}'")

        twin = by_id.get(c.twin)
        if twin is None or twin.color == c.color or twin.twin != c.id:
            problems.append(f"curve '{c.id}' has no proper twin")
        elif skeleton(twin) != skeleton(c):
            problems.append(f"curve '{c.id}' and its twin '{twin.id}' follow different paths")

    for t in diagram.tubes:
        strands = [s.strand for _, s in passes_by_tube[t.id]]
        if Counter(strands) != Counter(t.stations) or len(set(t.stations)) != len(t.stations):
            problems.append(f"tube '{t.id}' ring does not match the strands passing through it")
        reds = sum(1 for c, _ in passes_by_tube[t.id] if c.color == "red")
        blues = len(strands) - reds
        if t.kind == "drill" and (reds, blues) != (1, 1):
            problems.append(f"drill tube '{t.id}' carries {reds} red and {blues} blue strands")
        if t.kind.startswith("edge") and (reds < 1 or reds != blues):
            problems.append(f"edge tube '{t.id}' carries {reds} red and {blues} blue strands")

    red, blue = len(diagram.red_curves()), len(diagram.blue_curves())
    if red != diagram.genus or blue != diagram.genus:
        problems.append(f"{red} red and {blue} blue curves for genus {diagram.genus}")
    if diagram.euler_genus() != diagram.genus:
        problems.append(f"Euler count gives genus {diagram.euler_genus()}, declared {diagram.genus}")

    if problems:
        raise DiagramError("; ".join(problems))
    return diagram
