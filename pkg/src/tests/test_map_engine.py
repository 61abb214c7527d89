"""
Unit tests for crossings, the combinatorial map compiler and cut systems
"""

import sys
from fractions import Fraction
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import pytest  # noqa: E402

from algebra.exact_linalg import H1Summary, smith_normal_form  # noqa: E402
from diagram.builder import build  # noqa: E402
from graph.parser import load_graph  # noqa: E402
from graph.plumbing_graph import make_graph  # noqa: E402
from planning.drill_planner import optimize_cocycle, plan_drills  # noqa: E402
from surface.combinatorial_map import CombinatorialMap, surface_genus  # noqa: E402
from surface.compile import compile_diagram, crossing_vertices  # noqa: E402
from surface.crossings import (  # noqa: E402
    StrandGeometry,
    annulus_crossings,
    crossing_census,
    crossing_positions,
    geometric_crossings,
    h1_from_diagram,
    relation_matrix,
    total_crossings,
)
from surface.verification import validate_cut_system, verify_diagram  # noqa: E402
from utils.config import FIXTURES_DIR  # noqa: E402
from utils.errors import CompileError, SurfaceError  # noqa: E402


def strand(name, color, theta, twist=0, direction=1):
    return StrandGeometry(
        strand=name,
        curve=name,
        color=color,
        theta_in=Fraction(theta),
        theta_out=Fraction(theta),
        twist=twist,
        direction=direction,
    )


def built(graph, optimize=False):
    if optimize:
        graph = optimize_cocycle(graph)
    return build(graph, plan_drills(graph))


def single(genus, euler):
    return built(make_graph([("v", genus, euler)]))


def torus_map():
    """One vertex, loops a (red) and b (blue) interleaved"""
    m = CombinatorialMap()
    v = m.add_vertex("v")
    a = m.add_edge(("R", "red"))
    b = m.add_edge(("B", "blue"))
    m.set_rotation(v, [2 * a, 2 * b, 2 * a + 1, 2 * b + 1])
    return m


def bigon_sphere():
    """Two vertices joined by two edges: a red circle that separates the sphere"""
    m = CombinatorialMap()
    u, v = m.add_vertex("u"), m.add_vertex("v")
    e0 = m.add_edge(("R", "red"))
    e1 = m.add_edge(("R", "red"))
    m.set_rotation(u, [2 * e0, 2 * e1])
    m.set_rotation(v, [2 * e0 + 1, 2 * e1 + 1])
    return m


@pytest.mark.parametrize(
    "t1,t2,expected",
    [(0, 0, 0), (1, 0, 1), (-1, 0, -1), (3, 0, 3), (2, -1, 3), (0, 2, -2)],
)
def test_annulus_crossings_twist_difference(t1, t2, expected):
    """Two strands at distinct stations cross t1 - t2 times algebraically"""
    s1 = strand("s1", "blue", Fraction(1, 4), twist=t1)
    s2 = strand("s2", "red", Fraction(3, 4), twist=t2)
    assert annulus_crossings(s1, s2) == expected
    assert geometric_crossings(s1, s2) == abs(expected)
    assert len(crossing_positions(s1, s2)) == abs(expected)


def test_annulus_crossings_direction_sign():
    """Reversing one strand flips the sign"""
    s1 = strand("s1", "blue", Fraction(1, 4), twist=1, direction=-1)
    s2 = strand("s2", "red", Fraction(3, 4))
    assert annulus_crossings(s1, s2) == -1
    s1 = strand("s1", "blue", Fraction(1, 4), twist=1, direction=-1)
    s2 = strand("s2", "red", Fraction(3, 4), direction=-1)
    assert annulus_crossings(s1, s2) == 1


def test_crossing_positions_inside_tube():
    """Crossings sit strictly between the two ports, in increasing order"""
    s1 = strand("s1", "blue", Fraction(1, 6), twist=3)
    s2 = strand("s2", "red", Fraction(1, 2))
    positions = crossing_positions(s1, s2)
    assert positions == sorted(positions)
    assert all(0 < x < 1 for x in positions)


def test_shared_station_rejected():
    """Two strands on one station cannot be compared"""
    with pytest.raises(CompileError):
        annulus_crossings(strand("s1", "blue", Fraction(1, 2)), strand("s2", "red", Fraction(1, 2)))


def test_hand_built_torus():
    """Interleaved loops at one vertex give a torus, each loop cuts it to a sphere"""
    m = torus_map()
    assert m.num_faces == 1
    assert surface_genus(m) == 1
    red = validate_cut_system(m, "red")
    assert red.ok and red.count == 1


def test_hand_built_sphere():
    """Non-interleaved loops at one vertex give a sphere"""
    m = CombinatorialMap()
    v = m.add_vertex()
    a, b = m.add_edge(), m.add_edge()
    m.set_rotation(v, [2 * a, 2 * a + 1, 2 * b, 2 * b + 1])
    assert m.num_faces == 3
    assert surface_genus(m) == 0


def test_separating_curve_fails_cut_check():
    """Cutting a sphere along a circle leaves two pieces"""
    m = bigon_sphere()
    assert surface_genus(m) == 0
    report = validate_cut_system(m, "red", expected=1)
    assert report.disjoint
    assert not report.complement_connected
    assert not report.ok
    assert len(m.cut(["R"]).connected_components()) == 2


def test_surface_genus_needs_connected_map():
    """Disconnected maps raise SurfaceError"""
    m = CombinatorialMap()
    m.add_vertex()
    m.add_vertex()
    with pytest.raises(SurfaceError):
        surface_genus(m)


def test_unplaced_darts_rejected():
    """Every dart must sit at exactly one vertex"""
    m = CombinatorialMap()
    v = m.add_vertex()
    e = m.add_edge()
    m.set_rotation(v, [2 * e])
    with pytest.raises(SurfaceError):
        m.faces()


def test_single_vertex_e0_map():
    """g=0, e=0: genus 1, two crossings, relation matrix [[0]], H1 = Z"""
    d = single(0, 0)
    m = compile_diagram(d)
    assert surface_genus(m) == 1
    assert len(crossing_vertices(m)) == 2
    assert relation_matrix(d).to_rows() == [[0]]
    assert h1_from_diagram(d) == H1Summary(free_rank=1)


def test_single_vertex_e_minus_one_has_no_crossings():
    """g=0, e=-1: a single main cylinder, genus 0 and an empty map"""
    d = single(0, -1)
    assert d.genus == 0
    m = compile_diagram(d)
    assert surface_genus(m) == 0
    assert total_crossings(d) == 0
    assert relation_matrix(d).shape == (0, 0)


@pytest.mark.parametrize("n", range(2, 10))
def test_a_n_crossings(n):
    """Optimized A_n: genus 1, n crossings, relation matrix [[-n]]"""
    d = built(load_graph(FIXTURES_DIR / f"a{n}.graph"), optimize=True)
    assert d.genus == 1
    m = compile_diagram(d)
    assert surface_genus(m) == 1
    assert len(crossing_vertices(m)) == n
    assert total_crossings(d) == n
    assert relation_matrix(d).to_rows() == [[-n]]


def test_lens_5_2_relation_matrix():
    """L(5,2): invariant factors end in 5, H1 = Z/5"""
    d = built(load_graph(FIXTURES_DIR / "lens_5_2.graph"), optimize=True)
    assert d.genus == 2
    assert smith_normal_form(relation_matrix(d)) == [1, 5]
    assert h1_from_diagram(d) == H1Summary(free_rank=0, torsion=(5,))


def test_genus_one_bundle_relation_matrix_vanishes():
    """g=1, e=1: every blue curve meets every red one algebraically zero times"""
    d = single(1, 1)
    assert relation_matrix(d).to_rows() == [[0, 0], [0, 0]]


def test_geometric_bounds_algebraic():
    """Per pair of curves, |crossings| >= |algebraic intersection|"""
    d = built(load_graph(FIXTURES_DIR / "e8.graph"))
    relation = relation_matrix(d)
    reds = [c.id for c in d.red_curves()]
    blues = [c.id for c in d.blue_curves()]
    counts = {}
    for record in crossing_census(d):
        key = (record.blue_curve, record.red_curve)
        counts[key] = counts.get(key, 0) + 1
    for j, b in enumerate(blues):
        for i, r in enumerate(reds):
            assert counts.get((b, r), 0) >= abs(relation[j, i])


def test_same_colour_crossing_rejected():
    """Twisting a red strand makes it cross other red strands"""
    d = single(1, 1)
    red = d.curve("R.v.b1")
    segments = list(red.segments)
    segments[1] = segments[1].model_copy(update={"twist": 1})
    twisted = red.model_copy(update={"segments": tuple(segments)})
    broken = d.model_copy(update={"curves": tuple(twisted if c.id == red.id else c for c in d.curves)})
    with pytest.raises(CompileError):
        compile_diagram(broken)


def test_empty_tube_rejected():
    """A tube without strands cannot be compiled when curves exist"""
    d = single(0, 0)
    tubes = tuple(t.model_copy(update={"stations": ()}) if t.id == "v:x1" else t for t in d.tubes)
    with pytest.raises(CompileError):
        compile_diagram(d.model_copy(update={"tubes": tubes}))


@pytest.mark.parametrize("name", ["e8.graph", "non_seifert.graph", "running_example.graph"])
def test_cut_systems(name):
    """Both colours cut the compiled surface to one sphere with holes"""
    d = built(load_graph(FIXTURES_DIR / name))
    m = compile_diagram(d)
    assert surface_genus(m) == d.genus
    for color in ("red", "blue"):
        report = validate_cut_system(m, color, d.genus)
        assert report.ok, report


def test_verify_report_fields():
    """The report carries predicted and compiled genus, both SNFs and the H1 strings"""
    graph = load_graph(FIXTURES_DIR / "lens_5_2.graph")
    plan = plan_drills(graph)
    report = verify_diagram(graph, build(graph, plan), plan)
    assert report.ok
    assert report.genus_predicted == report.genus_compiled == 6
    assert report.oracle_snf == [1, 5]
    assert report.relation_snf[-1] == 5
    assert report.diagram_h1 == report.oracle_h1 == "Z/5"
    assert report.homology_authoritative
    assert report.cycle_edges == 0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
