"""
Tests for the plumb command-line driver
"""

import json
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import pytest  # noqa: E402

from plumb import main  # noqa: E402
from utils.config import FIXTURES_DIR  # noqa: E402

E8 = str(FIXTURES_DIR / "e8.graph")
LENS = str(FIXTURES_DIR / "lens_5_2.graph")
RUNNING = str(FIXTURES_DIR / "running_example.graph")


@pytest.fixture
def bad_graph(tmp_path):
    path = tmp_path / "bad.graph"
    path.write_text("vertex a\nedge a\n", encoding="utf-8")
    return str(path)


def test_plan_e8_optimized(capsys):
    """Branch vertex gets three negative edge drills and a positive main"""
    assert main(["plan", E8, "--optimize-cocycle"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "c   drills: -,-,-,+ (main: +)"
    assert out[-1] == "genus 3"


def test_plan_json(capsys):
    """JSON plan lists every vertex with its drills"""
    assert main(["plan", RUNNING, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["genus"] == 4
    assert data["vertices"]["b"]["extra_drills"] == [-1]
    assert data["vertices"]["a"]["main"] is None
    assert data["vertices"]["a"]["hub_edge"] == 0


def test_parse_error_exit_code(bad_graph, capsys):
    """Invalid graph files exit with 2"""
    assert main(["plan", bad_graph]) == 2
    assert "bad.graph" in capsys.readouterr().err


def test_plan_error_exit_code(capsys):
    """A drill override breaking the sum condition exits with 3"""
    assert main(["plan", LENS, "--drills", "a=+"]) == 3
    assert "euler" in capsys.readouterr().err


def test_drill_override_changes_plan(capsys):
    """Overrides are applied before planning output"""
    assert main(["plan", LENS, "--drills", "a=-,-,-,+,-"]) == 0
    out = capsys.readouterr().out
    assert "a  drills: +,-,-,-,+,- (main: -)" in out
    assert "genus 8" in out


def test_build_is_deterministic(tmp_path):
    """Two builds write identical documents"""
    first, second = tmp_path / "one.json", tmp_path / "out" / "two.json"
    assert main(["build", RUNNING, "--out", str(first)]) == 0
    assert main(["build", RUNNING, "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert json.loads(first.read_text(encoding="utf-8"))["genus"] == 4


def test_verify_ok(capsys):
    """Verification of shipped fixtures succeeds"""
    assert main(["verify", LENS, E8, "--optimize-cocycle"]) == 0
    out = capsys.readouterr().out
    assert "✓ genus" in out
    assert "✗" not in out


def test_verify_json(capsys):
    """JSON report has the documented keys"""
    assert main(["verify", LENS, "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    keys = ("genus_predicted", "genus_compiled", "red_cut_ok", "blue_cut_ok", "relation_snf", "oracle_snf", "h1_match")
    assert all(key in report for key in keys)
    assert report["ok"] is True
    assert report["file"] == LENS


def test_verify_cycles_is_informative(capsys):
    """Graphs with cycles mark the homology comparison as informative"""
    assert main(["verify", RUNNING, "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["homology_authoritative"] is False
    assert report["cycle_edges"] == 1


def test_verify_names_negated_signs_on_odd_cycles(capsys):
    """The odd cycle of the running example is reported as a sign negation, not a bare mismatch"""
    assert main(["verify", RUNNING]) == 0
    captured = capsys.readouterr()
    assert "every edge sign negated" in captured.err
    assert "differs on a graph with cycles" not in captured.err
    assert '"negated_h1_match": true' in captured.out


def test_homology_running_example(capsys):
    """Diagram homology equals the oracle of the sign-negated graph"""
    assert main(["homology", RUNNING, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["oracle_h1"] == "Z^3 + Z/3"
    assert data["diagram_h1"] == data["negated_oracle_h1"] == "Z^3"


def test_check_diagram_round_trip(tmp_path):
    """A built document verifies against its own graph"""
    doc = tmp_path / "lens.json"
    assert main(["build", LENS, "--out", str(doc)]) == 0
    assert main(["verify", LENS, "--check-diagram", str(doc)]) == 0


def test_check_diagram_corrupted_json(tmp_path):
    """Broken documents are verification failures"""
    doc = tmp_path / "broken.json"
    doc.write_text('{"version": 1, "genus": ', encoding="utf-8")
    assert main(["verify", LENS, "--check-diagram", str(doc)]) == 1


def test_check_diagram_corrupted_twist(tmp_path):
    """A blue twist edited by hand breaks the structural checks"""
    doc = tmp_path / "lens.json"
    assert main(["build", LENS, "--out", str(doc)]) == 0
    data = json.loads(doc.read_text(encoding="utf-8"))
    blue = next(c for c in data["curves"] if c["color"] == "blue")
    step = next(s for s in blue["segments"] if s["kind"] == "pass")
    step["twist"] += 1
    doc.write_text(json.dumps(data), encoding="utf-8")
    assert main(["verify", LENS, "--check-diagram", str(doc)]) == 1


def test_check_diagram_missing_file(tmp_path):
    """An unreadable document is a verification failure"""
    assert main(["verify", LENS, "--check-diagram", str(tmp_path / "none.json")]) == 1


def test_verify_worst_exit_code_wins(bad_graph):
    """Several files: the largest exit code is returned"""
    assert main(["verify", LENS, bad_graph, "--jobs", "2"]) == 2


def test_homology_json(capsys):
    """Oracle and diagram agree on L(5,2)"""
    assert main(["homology", LENS, "--json", "--optimize-cocycle"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["oracle_h1"] == data["diagram_h1"] == "Z/5"
    assert data["oracle_snf"] == [1, 5]
    assert data["relation_snf"] == [1, 5]


def test_render_svg_and_tikz(tmp_path):
    """Both formats write a document"""
    svg, tex = tmp_path / "lens.svg", tmp_path / "lens.tex"
    assert main(["render", LENS, "--out", str(svg)]) == 0
    assert main(["render", LENS, "--format", "tikz", "--out", str(tex)]) == 0
    assert "<svg" in svg.read_text(encoding="utf-8")
    assert tex.read_text(encoding="utf-8").startswith("\\documentclass")


@pytest.mark.parametrize("text", ["shape: round\n", "colors:\n  red: red\n"])
def test_render_with_bad_style(tmp_path, text):
    """Unknown style keys and named colours exit with 2"""
    style = tmp_path / "style.yaml"
    style.write_text(text, encoding="utf-8")
    out = str(tmp_path / "x.tex")
    assert main(["render", LENS, "--format", "tikz", "--style", str(style), "--out", out]) == 2


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
