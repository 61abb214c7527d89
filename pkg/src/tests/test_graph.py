"""
Unit tests for the plumbing graph model and parser
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import pytest  # noqa: E402

from graph.parser import load_graph, parse_graph, serialize_graph  # noqa: E402
from graph.plumbing_graph import (  # noqa: E402
    betti1,
    cycle_edges,
    flip_vertex,
    intersection_matrix,
    make_graph,
    negate_edge_signs,
    same_orientation_class,
    spanning_tree,
)
from utils.config import FIXTURES_DIR  # noqa: E402
from utils.errors import GraphParseError, GraphValidationError  # noqa: E402

RUNNING_EXAMPLE = """
# three vertices, one cycle
vertex a genus=0 euler=2
vertex b genus=1 euler=-1
vertex c genus=0 euler=0
edge a b sign=+
edge b c sign=-
edge a c sign=+
"""


@pytest.fixture
def running_example():
    """Graph with one cycle a-b-c"""
    return parse_graph(RUNNING_EXAMPLE)


def test_parse_running_example(running_example):
    """Decorations and signs are read in file order"""
    assert running_example.vertex_ids == ["a", "b", "c"]
    assert [(v.genus, v.euler) for v in running_example.vertices] == [(0, 2), (1, -1), (0, 0)]
    assert [e.sign for e in running_example.edges] == [1, -1, 1]
    assert running_example.edges[2].endpoints == ("a", "c")


def test_defaults_and_comments():
    """Missing keys default to genus 0, euler 0, sign +"""
    graph = parse_graph("vertex v  # lone vertex\n\nvertex w euler=-3\nedge v w\n")
    assert graph.vertex("v").genus == 0
    assert graph.vertex("v").euler == 0
    assert graph.vertex("w").euler == -3
    assert graph.edges[0].sign == 1


def test_sign_tokens():
    """Both + / - and +1 / -1 are accepted"""
    graph = parse_graph("vertex a\nvertex b\nedge a b sign=-1\nedge a b sign=+1\n")
    assert [e.sign for e in graph.edges] == [-1, 1]


def test_malformed_edge_reports_line_and_column():
    """Syntax errors carry 1-based line and column"""
    with pytest.raises(GraphParseError) as info:
        parse_graph("vertex a\nvertex b\nedge a b sign=x\n")
    assert info.value.line == 3
    assert info.value.column == 15
    assert "3:15:" in str(info.value)


@pytest.mark.parametrize(
    "text",
    [
        "vertex\n",
        "vertex a genus=-1\n",
        "vertex a euler=two\n",
        "vertex a color=red\n",
        "vertex a-b\n",
        "node a\n",
        "vertex a\nvertex b\nedge a\n",
    ],
)
def test_syntax_errors(text):
    """Malformed lines raise GraphParseError"""
    with pytest.raises(GraphParseError):
        parse_graph(text)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("vertex a\nvertex a\n", "duplicate vertex id"),
        ("vertex a\nedge a b\n", "unknown vertex"),
        ("vertex a\nedge a a\n", "self-loop"),
        ("vertex a\nvertex b\n", "disconnected"),
        ("# nothing\n", "no vertices"),
    ],
)
def test_validation_errors(text, fragment):
    """Structural problems raise GraphValidationError"""
    with pytest.raises(GraphValidationError) as info:
        parse_graph(text)
    assert fragment in str(info.value)


def test_errors_map_to_parse_exit_code():
    """Both graph error kinds exit with code 2"""
    assert GraphParseError("x").exit_code == 2
    assert GraphValidationError("x").exit_code == 2


def test_serialize_is_normalized(running_example):
    """Serialization writes every key and parses back to the same graph"""
    text = serialize_graph(running_example)
    assert text.splitlines()[0] == "vertex a genus=0 euler=2"
    assert "edge b c sign=-" in text
    assert parse_graph(text) == running_example


def test_load_graph_with_path_in_errors(tmp_path):
    """Errors from files mention the file"""
    path = tmp_path / "bad.graph"
    path.write_text("vertex a\nedge a\n", encoding="utf-8")
    with pytest.raises(GraphParseError) as info:
        load_graph(path)
    assert str(path) in str(info.value)
    with pytest.raises(GraphParseError):
        load_graph(tmp_path / "missing.graph")


def test_fixtures_parse():
    """Every shipped fixture is a valid graph"""
    files = sorted(FIXTURES_DIR.glob("*.graph"))
    assert len(files) >= 10
    for path in files:
        load_graph(path)


def test_spanning_tree_and_cycles(running_example):
    """Tree grows from the smallest id taking the first leaving edge in file order"""
    assert spanning_tree(running_example) == [0, 1]
    assert cycle_edges(running_example) == [2]
    assert betti1(running_example) == 1


def test_spanning_tree_order_follows_growth():
    """Insertion order is the order edges join the tree, not file order"""
    graph = make_graph([("b", 0, 0), ("c", 0, 0), ("a", 0, 0)], [("b", "c", 1), ("a", "b", 1)])
    assert spanning_tree(graph) == [1, 0]


def test_intersection_matrix_sums_parallel_edges():
    """Off-diagonal entries add the signs of all edges between two vertices"""
    graph = make_graph([("a", 0, -2), ("b", 0, -3)], [("a", "b", 1), ("a", "b", 1)])
    assert intersection_matrix(graph).to_rows() == [[-2, 2], [2, -3]]
    graph = make_graph([("a", 0, 0), ("b", 0, 0)], [("a", "b", 1), ("a", "b", -1)])
    assert intersection_matrix(graph).to_rows() == [[0, 0], [0, 0]]


def test_flip_vertex_keeps_orientation_class(running_example):
    """Vertex flips negate incident signs and stay in the same class"""
    flipped = flip_vertex(running_example, "b")
    assert [e.sign for e in flipped.edges] == [-1, 1, 1]
    assert same_orientation_class(running_example, flipped)
    changed = running_example.with_signs([1, 1, 1])
    assert not same_orientation_class(running_example, changed)


@pytest.mark.parametrize("name", ["running_example.graph", "non_seifert.graph", "parallel_edges.graph", "e8.graph"])
def test_flip_vertex_conjugates_intersection_matrix(name):
    """Flipping v gives D A D with D = diag(+1, ..., -1 at v, ..., +1)"""
    graph = load_graph(FIXTURES_DIR / name)
    a = intersection_matrix(graph).to_rows()
    for k, vid in enumerate(graph.vertex_ids):
        d = [-1 if i == k else 1 for i in range(len(graph.vertices))]
        expected = [[d[i] * a[i][j] * d[j] for j in range(len(d))] for i in range(len(d))]
        assert intersection_matrix(flip_vertex(graph, vid)).to_rows() == expected


@pytest.mark.parametrize("name", ["running_example.graph", "non_seifert.graph", "parallel_edges.graph", "e8.graph"])
def test_flip_vertex_is_an_involution(name):
    """Flipping the same vertex twice gives back the graph"""
    graph = load_graph(FIXTURES_DIR / name)
    for vid in graph.vertex_ids:
        once = flip_vertex(graph, vid)
        assert once != graph or not graph.incident_edges(vid)
        assert flip_vertex(once, vid) == graph


def test_negate_edge_signs_and_odd_cycles(running_example):
    """Negating every sign is a gauge change on trees and even cycles, not on odd cycles"""
    negated = negate_edge_signs(running_example)
    assert [e.sign for e in negated.edges] == [-1, 1, -1]
    assert not same_orientation_class(running_example, negated)
    for name in ("non_seifert.graph", "parallel_edges.graph", "e8.graph"):
        graph = load_graph(FIXTURES_DIR / name)
        assert same_orientation_class(graph, negate_edge_signs(graph))


def test_networkx_view(running_example):
    """The multigraph view keeps one edge per graph edge"""
    g = running_example.to_networkx()
    assert g.number_of_nodes() == 3
    assert g.number_of_edges() == 3
    assert running_example.degree("b") == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
