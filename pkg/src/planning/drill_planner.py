"""
Drill planning

Every vertex v gets one vertical cylinder per incident edge (sign = edge
sign) plus extra cylinders of sign +1/-1 so that the signs add up to e_v.
One extra cylinder is the main cylinder; a genus-0 vertex of degree 2 whose
edge signs already add up to e_v needs none.
"""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict

from graph.plumbing_graph import flip_vertices, spanning_tree
from utils.config import EXHAUSTIVE_GAUGE_LIMIT
from utils.errors import PlanError

logger = logging.getLogger(__name__)

SIGN_TEXT = {1: "+", -1: "-"}
SIGN_TOKENS = {"+": 1, "-": -1, "+1": 1, "-1": -1}


class VertexPlan(BaseModel):
    """Cylinder inventory of one vertex"""

    model_config = ConfigDict(frozen=True)

    vertex: str
    genus: int = 0
    # (edge index, sign) for every incident edge, in file order
    edge_drills: tuple[tuple[int, int], ...] = ()
    extra_drills: tuple[int, ...] = ()
    main: int | None = None
    # tree edge whose drill plays the hub role when there is no main cylinder
    hub_edge: int | None = None

    @property
    def degree(self):
        return len(self.edge_drills)

    @property
    def n_extra(self):
        return len(self.extra_drills)

    @property
    def drill_signs(self):
        return [s for _, s in self.edge_drills] + list(self.extra_drills)

    def describe(self):
        signs = ",".join(SIGN_TEXT[s] for s in self.drill_signs)
        main = SIGN_TEXT[self.extra_drills[self.main]] if self.main is not None else "none"
        return f"drills: {signs} (main: {main})"


class DrillPlan(BaseModel):
    """Per-vertex records in vertex declaration order"""

    model_config = ConfigDict(frozen=True)

    vertices: tuple[VertexPlan, ...]

    def entry(self, vertex_id):
        for record in self.vertices:
            if record.vertex == vertex_id:
                return record
        raise PlanError(f"plan has no record for vertex '{vertex_id}'")


def _sign(x):
    return 1 if x > 0 else -1


def _default_extras(genus, degree, residual):
    if residual != 0:
        return (_sign(residual),) * abs(residual), 0
    if genus == 0 and degree == 2:
        return (), None
    return (1, -1), 0


def _first_tree_edge(incident, tree):
    return next((k for k in incident if k in tree), None)


def mainless_chains(graph, plan):
    """
    Maximal paths of main-less vertices joined by spanning-tree edges whose
    outer edges are all cycle edges

    The cycle-edge gluing needs at least one main cylinder on the curve that
    runs along such a path, so these chains are illegal.

    Returns:
        list: chains as lists of vertex ids (declaration order)
    """
    tree = set(spanning_tree(graph))
    mainless = {r.vertex for r in plan.vertices if r.main is None}
    order = {v: i for i, v in enumerate(graph.vertex_ids)}
    seen = set()
    chains = []
    for v in graph.vertex_ids:
        if v not in mainless or v in seen:
            continue
        component = []
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            component.append(x)
            for k in graph.incident_edges(x):
                y = graph.edges[k].other(x)
                if k in tree and y in mainless and y not in seen:
                    seen.add(y)
                    stack.append(y)
        members = set(component)
        outer = [
            k
            for x in component
            for k in graph.incident_edges(x)
            if not (k in tree and graph.edges[k].other(x) in members)
        ]
        if outer and all(k not in tree for k in outer):
            chains.append(sorted(component, key=order.get))
    return chains


def plan_drills(graph):
    """
    Default drill plan: minimal extra cylinders per vertex

    For residual r = e_v - sum of incident edge signs: |r| extras of sign(r);
    when r = 0, none for a genus-0 vertex of degree 2 and (+1, -1) otherwise.
    Main-less chains closed off by cycle edges get their first vertex promoted
    to (+1, -1) with a main cylinder.

    Args:
        graph: PlumbingGraph

    Returns:
        DrillPlan
    """
    tree = set(spanning_tree(graph))
    records = []
    for v in graph.vertices:
        incident = graph.incident_edges(v.id)
        drills = tuple((k, graph.edges[k].sign) for k in incident)
        residual = v.euler - sum(s for _, s in drills)
        extras, main = _default_extras(v.genus, len(incident), residual)
        hub = _first_tree_edge(incident, tree) if main is None else None
        records.append(
            VertexPlan(vertex=v.id, genus=v.genus, edge_drills=drills, extra_drills=extras, main=main, hub_edge=hub)
        )
    plan = DrillPlan(vertices=tuple(records))

    chains = mainless_chains(graph, plan)
    if chains:
        promote = {chain[0] for chain in chains}
        logger.debug("promoting main-less chain heads %s", sorted(promote))
        records = [
            r.model_copy(update={"extra_drills": (1, -1), "main": 0, "hub_edge": None}) if r.vertex in promote else r
            for r in records
        ]
        plan = DrillPlan(vertices=tuple(records))
    return plan


def validate_plan(graph, plan):
    """
    Check every plan invariant against the graph

    Raises:
        PlanError: on the first violated invariant
    """
    if [r.vertex for r in plan.vertices] != graph.vertex_ids:
        raise PlanError("plan vertices do not match the graph")
    tree = set(spanning_tree(graph))
    for v, r in zip(graph.vertices, plan.vertices):
        incident = graph.incident_edges(v.id)
        expected = tuple((k, graph.edges[k].sign) for k in incident)
        if r.edge_drills != expected:
            raise PlanError(f"vertex '{v.id}': edge drills {r.edge_drills} do not match edges {expected}")
        if any(s not in (1, -1) for s in r.extra_drills):
            raise PlanError(f"vertex '{v.id}': extra drill signs must be +1 or -1")
        total = sum(r.drill_signs)
        if total != v.euler:
            raise PlanError(
                f"vertex '{v.id}': drill signs add up to {total}, expected euler number {v.euler}"
            )
        if r.main is None:
            if not (v.genus == 0 and len(incident) == 2 and not r.extra_drills):
                raise PlanError(f"vertex '{v.id}' needs a main cylinder")
            if r.hub_edge not in incident or r.hub_edge not in tree:
                raise PlanError(f"vertex '{v.id}': hub must be a spanning-tree edge drill")
        else:
            if not 0 <= r.main < len(r.extra_drills):
                raise PlanError(f"vertex '{v.id}': main index {r.main} is not an extra drill")
            if r.hub_edge is not None:
                raise PlanError(f"vertex '{v.id}': hub edge given although a main cylinder exists")
        if not r.drill_signs:
            raise PlanError(f"vertex '{v.id}' has no cylinders")
    chains = mainless_chains(graph, plan)
    if chains:
        raise PlanError(f"main-less chains closed by cycle edges: {chains}")
    return plan


def vertex_genus(record):
    """Genus of the drilled body of one vertex: 2g + d + n - 1"""
    return 2 * record.genus + record.degree + record.n_extra - 1


def predicted_genus(graph, plan):
    """
    Heegaard genus of the diagram the plan produces

    Sum of 2g + d + n - 1 over vertices minus one per spanning-tree edge;
    cycle edges contribute nothing.
    """
    validate_plan(graph, plan)
    return sum(vertex_genus(r) for r in plan.vertices) - (len(graph.vertices) - 1)


def _gauge_genera(graph, flips):
    """
    Genus of the default plan (before chain promotion) for many gauges at once

    Args:
        flips: (N, V) array of +1/-1 vertex flips

    Returns:
        np.ndarray: (N,) genera
    """
    index = {vid: i for i, vid in enumerate(graph.vertex_ids)}
    n_vertices = len(graph.vertices)
    genus = np.array([v.genus for v in graph.vertices])
    euler = np.array([v.euler for v in graph.vertices])
    degree = np.array([graph.degree(v.id) for v in graph.vertices])
    base = 2 * genus.sum() + degree.sum() - 2 * n_vertices + 1
    if not graph.edges:
        residual = np.tile(euler, (flips.shape[0], 1))
    else:
        ia = np.array([index[e.endpoints[0]] for e in graph.edges])
        ib = np.array([index[e.endpoints[1]] for e in graph.edges])
        sigma = np.array([e.sign for e in graph.edges])
        signs = sigma * flips[:, ia] * flips[:, ib]
        incidence = np.zeros((len(graph.edges), n_vertices), dtype=int)
        incidence[np.arange(len(graph.edges)), ia] = 1
        incidence[np.arange(len(graph.edges)), ib] = 1
        residual = euler - signs @ incidence
    exempt = (genus == 0) & (degree == 2)
    extras = np.where(residual != 0, np.abs(residual), np.where(exempt, 0, 2))
    return base + extras.sum(axis=1)


def _flipped(graph, flip_set):
    return flip_vertices(graph, [graph.vertex_ids[i] for i in flip_set])


def _exact_genus(graph, flip_set):
    g = _flipped(graph, flip_set)
    return predicted_genus(g, plan_drills(g))


def _flip_rows(n_vertices, flip_sets):
    flips = np.ones((len(flip_sets), n_vertices), dtype=int)
    for row, flip_set in enumerate(flip_sets):
        flips[row, list(flip_set)] = -1
    return flips


def _best_gauge(graph, flips, flip_sets, chains_possible):
    """
    Smallest (genus, flip set) among candidate gauges

    Chain promotion only adds cylinders, so the vectorized default-plan genus
    is a lower bound; exact plans are built only while that bound can still win.
    """
    genera = _gauge_genera(graph, flips)
    best = None
    for base, flip_set in sorted(zip(genera.tolist(), flip_sets)):
        if best is not None and base > best[0]:
            break
        exact = _exact_genus(graph, flip_set) if chains_possible else base
        if best is None or (exact, flip_set) < best:
            best = (exact, flip_set)
    return best


def optimize_cocycle(graph, exhaustive_limit=None):
    """
    Re-gauge the edge signs to minimize the predicted genus

    Exhaustive over the 2^(V-1) flip sets that keep the first vertex fixed
    when V <= exhaustive_limit, greedy single flips otherwise. Ties go to the
    lexicographically smallest flip set (tuple of vertex indices).

    Args:
        graph: PlumbingGraph
        exhaustive_limit: override for EXHAUSTIVE_GAUGE_LIMIT

    Returns:
        PlumbingGraph: same orientation class, minimal default-plan genus
    """
    limit = EXHAUSTIVE_GAUGE_LIMIT if exhaustive_limit is None else exhaustive_limit
    n_vertices = len(graph.vertices)
    if not graph.edges:
        return graph
    chains_possible = len(graph.edges) >= n_vertices

    if n_vertices <= limit:
        masks = np.arange(2 ** (n_vertices - 1), dtype=np.int64)
        bits = (masks[:, None] >> np.arange(n_vertices - 1)) & 1
        flips = np.ones((len(masks), n_vertices), dtype=int)
        flips[:, 1:] = 1 - 2 * bits
        flip_sets = [tuple(int(i) + 1 for i in np.flatnonzero(row)) for row in bits]
        best = _best_gauge(graph, flips, flip_sets, chains_possible)
        logger.debug("exhaustive gauge search over %d flip sets: genus %d, flips %s", len(masks), *best)
        return _flipped(graph, best[1])

    current_genus, current = _best_gauge(graph, _flip_rows(n_vertices, [()]), [()], chains_possible)
    while True:
        trials = [tuple(sorted(set(current) ^ {i})) for i in range(n_vertices)]
        genus, trial = _best_gauge(graph, _flip_rows(n_vertices, trials), trials, chains_possible)
        if genus >= current_genus:
            break
        current, current_genus = trial, genus
    logger.debug("greedy gauge search: genus %d, flips %s", current_genus, current)
    return _flipped(graph, current)


def parse_drill_override(text):
    """
    Parse "v=+,-,-;w=+" into {"v": (1, -1, -1), "w": (1,)}

    Raises:
        PlanError: malformed override
    """
    overrides = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise PlanError(f"drill override '{part}' must look like v=+,-")
        vid, signs = (s.strip() for s in part.split("=", 1))
        if not vid:
            raise PlanError(f"drill override '{part}' has no vertex id")
        tokens = [t.strip() for t in signs.split(",") if t.strip()]
        bad = [t for t in tokens if t not in SIGN_TOKENS]
        if bad:
            raise PlanError(f"drill override for '{vid}': invalid signs {bad}")
        if vid in overrides:
            raise PlanError(f"drill override for '{vid}' given twice")
        overrides[vid] = tuple(SIGN_TOKENS[t] for t in tokens)
    return overrides


def apply_override(graph, plan, overrides):
    """
    Replace the extra drills of the named vertices and re-validate

    Raises:
        PlanError: unknown vertex or a violated plan invariant (sum condition)
    """
    tree = set(spanning_tree(graph))
    known = set(graph.vertex_ids)
    for vid in overrides:
        if vid not in known:
            raise PlanError(f"drill override names unknown vertex '{vid}'")
    records = []
    for r in plan.vertices:
        if r.vertex in overrides:
            extras = overrides[r.vertex]
            main = 0 if extras else None
            hub = None if extras else _first_tree_edge([k for k, _ in r.edge_drills], tree)
            r = r.model_copy(update={"extra_drills": extras, "main": main, "hub_edge": hub})
        records.append(r)
    return validate_plan(graph, DrillPlan(vertices=tuple(records)))
