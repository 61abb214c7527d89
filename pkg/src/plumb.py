"""
Command-line driver: plumbing graph -> drill plan -> Heegaard diagram

    python src/plumb.py plan|build|verify|homology|render <file> [options]

Exit codes: 0 ok, 1 verification failure, 2 parse/validation error,
3 plan constraint violation.
"""

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from algebra.exact_linalg import smith_normal_form
from algebra.oracle import oracle_h1, oracle_snf
from diagram.builder import build
from diagram.serialize import from_json, to_json
from graph.parser import load_graph
from graph.plumbing_graph import negate_edge_signs
from planning.drill_planner import apply_override, optimize_cocycle, parse_drill_override, plan_drills, predicted_genus
from render.spec import RenderSpec, load_style
from render.svg import render_svg
from render.tikz import render_tikz
from surface.crossings import h1_from_diagram, relation_matrix
from surface.verification import verify_diagram
from utils.config import EXIT_CODES, VERIFY_JOBS
from utils.console import banner, configure_logging, error, status, warn
from utils.errors import DiagramError, PlumbError, SurfaceError


def prepare(args, path):
    """
    Load a graph and plan its drills according to the command-line flags

    Returns:
        tuple: (graph, plan)
    """
    graph = load_graph(path)
    if args.optimize_cocycle:
        graph = optimize_cocycle(graph)
    plan = plan_drills(graph)
    for text in args.drills or ():
        plan = apply_override(graph, plan, parse_drill_override(text))
    return graph, plan


def _emit(text, out):
    """Write to --out (creating parent directories) or stdout"""
    if out:
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_plan(args):
    graph, plan = prepare(args, args.file)
    genus = predicted_genus(graph, plan)
    if args.json:
        data = {
            "genus": genus,
            "vertices": {
                r.vertex: {
                    "edge_drills": [list(d) for d in r.edge_drills],
                    "extra_drills": list(r.extra_drills),
                    "main": r.main,
                    "hub_edge": r.hub_edge,
                }
                for r in plan.vertices
            },
        }
        print(json.dumps(data, indent=2))
        return EXIT_CODES["ok"]
    width = max(len(r.vertex) for r in plan.vertices)
    for r in plan.vertices:
        print(f"{r.vertex:<{width}}  {r.describe()}")
    print(f"genus {genus}")
    return EXIT_CODES["ok"]


def cmd_build(args):
    graph, plan = prepare(args, args.file)
    _emit(to_json(build(graph, plan)), args.out)
    return EXIT_CODES["ok"]


def _verify_one(args, path):
    """
    Returns:
        tuple: (exit code, report dict or None, error message or None)
    """
    try:
        graph, plan = prepare(args, path)
        if args.check_diagram:
            diagram = from_json(Path(args.check_diagram).read_text(encoding="utf-8"))
        else:
            diagram = build(graph, plan)
        report = verify_diagram(graph, diagram, plan)
    except (DiagramError, SurfaceError) as e:
        return EXIT_CODES["verification"], None, str(e)
    except OSError as e:
        return EXIT_CODES["verification"], None, f"cannot read diagram: {e}"
    except PlumbError as e:
        return e.exit_code, None, str(e)
    code = EXIT_CODES["ok"] if report.ok else EXIT_CODES["verification"]
    return code, report.model_dump(), None


def _print_report(path, report, message):
    banner(f"verify {path}")
    if report is None:
        error(message)
        status("diagram", False, message.splitlines()[0] if message else "")
        return
    same = report["genus_predicted"] == report["genus_compiled"]
    status("genus", same, f"predicted {report['genus_predicted']}, compiled {report['genus_compiled']}")
    status("red cut system", report["red_cut_ok"])
    status("blue cut system", report["blue_cut_ok"])
    detail = f"diagram {report['diagram_h1']}, oracle {report['oracle_h1']}"
    if report["homology_authoritative"]:
        status("homology", report["h1_match"], detail)
    elif not report["h1_match"] and report["negated_h1_match"]:
        warn(
            "diagram presents the graph with every edge sign negated, which differs on odd cycles "
            f"(informative only): {detail}, oracle with negated signs {report['negated_oracle_h1']}"
        )
    elif not report["h1_match"]:
        warn(f"homology differs on a graph with cycles (informative only): {detail}")
    else:
        status("homology", True, detail + " (informative)")
    print(f"crossings: {report['crossings_total']}")
    print(json.dumps(report, indent=2))


def cmd_verify(args):
    if args.check_diagram and len(args.file) != 1:
        raise PlumbError("--check-diagram needs exactly one graph file")
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(lambda p: _verify_one(args, p), args.file))
    if args.json:
        docs = [dict(file=str(p), **(r or {"error": m})) for p, (_, r, m) in zip(args.file, results)]
        print(json.dumps(docs[0] if len(docs) == 1 else docs, indent=2))
    else:
        for path, (_, report, message) in zip(args.file, results):
            _print_report(path, report, message)
    return max(code for code, _, _ in results)


def cmd_homology(args):
    graph, plan = prepare(args, args.file)
    diagram = build(graph, plan)
    relation = relation_matrix(diagram)
    data = {
        "oracle_h1": str(oracle_h1(graph)),
        "diagram_h1": str(h1_from_diagram(diagram)),
        "negated_oracle_h1": str(oracle_h1(negate_edge_signs(graph))),
        "oracle_snf": oracle_snf(graph),
        "relation_snf": smith_normal_form(relation),
    }
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(f"oracle H1:    {data['oracle_h1']}")
        print(f"diagram H1:   {data['diagram_h1']}")
        print(f"negated H1:   {data['negated_oracle_h1']} (oracle with every edge sign negated)")
        print(f"oracle SNF:   {data['oracle_snf']}")
        print(f"relation SNF: {data['relation_snf']}")
    return EXIT_CODES["ok"]


def cmd_render(args):
    graph, plan = prepare(args, args.file)
    diagram = build(graph, plan)
    spec = load_style(args.style, args.format) if args.style else RenderSpec(format=args.format)
    document = render_svg(diagram, spec) if spec.format == "svg" else render_tikz(diagram, spec)
    _emit(document, args.out)
    return EXIT_CODES["ok"]


def build_parser():
    parser = argparse.ArgumentParser(prog="plumb", description="Heegaard diagrams of plumbed graph manifolds")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--optimize-cocycle", action="store_true", help="Re-gauge edge signs to minimize the genus")
    common.add_argument(
        "--drills", action="append", metavar="SPEC", help='Override extra drills, e.g. "v=+,-;w=+" (repeatable)'
    )
    common.add_argument("--verbose", action="store_true", help="Debug logging on stderr")

    p = sub.add_parser("plan", parents=[common], help="Print the drill plan and predicted genus")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("build", parents=[common], help="Emit the diagram as JSON")
    p.add_argument("file")
    p.add_argument("--out", help="Output path (default: stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", parents=[common], help="Build and check one or more graphs")
    p.add_argument("file", nargs="+")
    p.add_argument("--json", action="store_true")
    p.add_argument("--jobs", type=int, default=VERIFY_JOBS, help=f"Worker threads (default: {VERIFY_JOBS})")
    p.add_argument("--check-diagram", metavar="JSON", help="Verify this diagram document instead of building one")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("homology", parents=[common], help="Compare oracle and diagram first homology")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("render", parents=[common], help="Draw the diagram")
    p.add_argument("file")
    p.add_argument("--format", choices=["svg", "tikz"], default="svg")
    p.add_argument("--out", help="Output path (default: stdout)")
    p.add_argument("--style", help="YAML file overriding render defaults")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        return args.func(args)
    except PlumbError as e:
        error(str(e))
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
