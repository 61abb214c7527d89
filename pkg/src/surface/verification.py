"""
End-to-end checks of a built diagram against its plumbing graph
"""

import logging

from pydantic import BaseModel, ConfigDict

from algebra.exact_linalg import smith_normal_form, summary_from_factors
from algebra.oracle import oracle_h1, oracle_snf
from diagram.model import check_invariants
from graph.plumbing_graph import betti1, cycle_edges, negate_edge_signs
from planning.drill_planner import predicted_genus
from surface.combinatorial_map import surface_genus
from surface.compile import compile_diagram
from surface.crossings import relation_matrix

logger = logging.getLogger(__name__)


class CutReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    color: str
    disjoint: bool
    count: int
    expected: int
    complement_connected: bool
    complement_genus: int

    @property
    def ok(self):
        counted = self.count == self.expected
        return self.disjoint and counted and self.complement_connected and self.complement_genus == 0


class VerificationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    genus_predicted: int
    genus_compiled: int
    red_cut_ok: bool
    blue_cut_ok: bool
    relation_snf: list[int]
    oracle_snf: list[int]
    h1_match: bool
    crossings_total: int
    cycle_edges: int
    # homology is only compared as a hard check on trees
    homology_authoritative: bool
    diagram_h1: str
    oracle_h1: str
    # edge gluing presents the graph with every edge sign negated; differs from oracle_h1 only on odd cycles
    negated_oracle_h1: str
    negated_h1_match: bool
    ok: bool


def validate_cut_system(m, color, expected=None):
    """
    Check that the curves of one colour cut the surface to a sphere with holes

    Args:
        m: connected CombinatorialMap from compile_diagram
        color: "red" or "blue"
        expected: required number of curves (default: genus of m)

    Returns:
        CutReport: failures are reported, never raised
    """
    curves = sorted(c for c, col in m.curve_colors.items() if col == color)
    if expected is None:
        expected = surface_genus(m)

    owners = {}
    disjoint = True
    for curve in curves:
        for e in m.curve_edges[curve]:
            for d in (2 * e, 2 * e + 1):
                v = m.dart_vertex(d)
                if owners.setdefault(v, curve) != curve:
                    disjoint = False

    connected, genus = False, -1
    if disjoint:
        cut = m.cut(curves)
        chi = cut.component_characteristics()
        connected = len(chi) == 1
        genus = (2 - chi[0]) // 2 if connected else -1
    report = CutReport(
        color=color,
        disjoint=disjoint,
        count=len(curves),
        expected=expected,
        complement_connected=connected,
        complement_genus=genus,
    )
    logger.debug("%s cut system: %s", color, report)
    return report


def verify_diagram(graph, diagram, plan):
    """
    Run every check on a diagram built from graph and plan

    Returns:
        VerificationReport

    Raises:
        DiagramError: the diagram violates its structural invariants
        CompileError: it cannot be compiled
    """
    check_invariants(diagram)
    predicted = predicted_genus(graph, plan)
    m = compile_diagram(diagram)
    compiled = surface_genus(m)
    red = validate_cut_system(m, "red", diagram.genus)
    blue = validate_cut_system(m, "blue", diagram.genus)

    relation = relation_matrix(diagram)
    relation_snf = smith_normal_form(relation)
    diagram_h1 = summary_from_factors(relation.rows, relation_snf)
    expected_h1 = oracle_h1(graph)
    h1_match = diagram_h1 == expected_h1
    negated_h1 = oracle_h1(negate_edge_signs(graph))
    authoritative = betti1(graph) == 0

    ok = predicted == compiled == diagram.genus and red.ok and blue.ok and (h1_match or not authoritative)
    return VerificationReport(
        genus_predicted=predicted,
        genus_compiled=compiled,
        red_cut_ok=red.ok,
        blue_cut_ok=blue.ok,
        relation_snf=relation_snf,
        oracle_snf=oracle_snf(graph),
        h1_match=h1_match,
        crossings_total=len(m.crossings),
        cycle_edges=len(cycle_edges(graph)),
        homology_authoritative=authoritative,
        diagram_h1=str(diagram_h1),
        oracle_h1=str(expected_h1),
        negated_oracle_h1=str(negated_h1),
        negated_h1_match=diagram_h1 == negated_h1,
        ok=ok,
    )
