"""
Line-oriented plumbing graph files

    # comment
    vertex <id> [genus=<nonneg int>] [euler=<int>]
    edge <id> <id> [sign=<+|->]
"""

import logging
import re
from pathlib import Path

from pydantic import ValidationError

from graph.plumbing_graph import ID_PATTERN, EdgeData, PlumbingGraph, VertexData, validate_graph
from utils.errors import GraphParseError, GraphValidationError

logger = logging.getLogger(__name__)

TOKEN = re.compile(r"\S+")
ID_RE = re.compile(ID_PATTERN)
INT_RE = re.compile(r"^[+-]?\d+$")
SIGNS = {"+": 1, "-": -1, "+1": 1, "-1": -1}


class _Line:
    """Tokens of one input line plus what is needed to report errors on it"""

    def __init__(self, text, lineno, path):
        text = text.split("#", 1)[0]
        self.tokens = [(m.group(0), m.start() + 1) for m in TOKEN.finditer(text)]
        self.lineno = lineno
        self.path = path

    def fail(self, message, column=None):
        return GraphParseError(message, self.lineno, column, self.path)

    def invalid(self, message, column=None):
        location = f"{self.path}:" if self.path else ""
        location += f"{self.lineno}:" + (f"{column}:" if column else "")
        return GraphValidationError(f"{location} {message}")

    def vertex_id(self, index):
        text, col = self.tokens[index]
        if not ID_RE.match(text):
            raise self.fail(f"invalid vertex id '{text}'", col)
        return text

    def options(self, start, allowed):
        options = {}
        for text, col in self.tokens[start:]:
            if "=" not in text:
                raise self.fail(f"expected key=value, got '{text}'", col)
            key, value = text.split("=", 1)
            if key not in allowed:
                raise self.fail(f"unknown key '{key}' (expected {' or '.join(allowed)})", col)
            if key in options:
                raise self.fail(f"duplicate key '{key}'", col)
            options[key] = (value, col + len(key) + 1)
        return options

    def integer(self, options, key, default):
        if key not in options:
            return default
        value, col = options[key]
        if not INT_RE.match(value):
            raise self.fail(f"{key} must be an integer, got '{value}'", col)
        return int(value)


def parse_graph(text, path=None):
    """
    Parse a plumbing graph document

    Args:
        text: File contents
        path: Optional source path, used in error messages

    Returns:
        PlumbingGraph: vertices and edges in file order

    Raises:
        GraphParseError: syntax error, with line and column
        GraphValidationError: duplicate id, unknown vertex, self-loop, disconnected graph
    """
    vertices = []
    edges = []
    declared = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _Line(raw, lineno, path)
        if not line.tokens:
            continue
        keyword, col = line.tokens[0]

        if keyword == "vertex":
            if len(line.tokens) < 2:
                raise line.fail("vertex line needs an id", col)
            vid = line.vertex_id(1)
            options = line.options(2, ("genus", "euler"))
            genus = line.integer(options, "genus", 0)
            euler = line.integer(options, "euler", 0)
            if genus < 0:
                raise line.fail("genus must be nonnegative", options["genus"][1])
            if vid in declared:
                raise line.invalid(f"duplicate vertex id '{vid}' (first declared on line {declared[vid]})")
            declared[vid] = lineno
            vertices.append(VertexData(id=vid, genus=genus, euler=euler))

        elif keyword == "edge":
            if len(line.tokens) < 3:
                raise line.fail("edge line needs two vertex ids", col)
            a, b = line.vertex_id(1), line.vertex_id(2)
            options = line.options(3, ("sign",))
            sign = 1
            if "sign" in options:
                value, vcol = options["sign"]
                if value not in SIGNS:
                    raise line.fail(f"sign must be + or -, got '{value}'", vcol)
                sign = SIGNS[value]
            for end, (_, ecol) in ((a, line.tokens[1]), (b, line.tokens[2])):
                if end not in declared:
                    raise line.invalid(f"unknown vertex '{end}' in edge", ecol)
            if a == b:
                raise line.invalid(f"self-loop at '{a}' (loops are not allowed)")
            edges.append(EdgeData(endpoints=(a, b), sign=sign))

        else:
            raise line.fail(f"unknown keyword '{keyword}' (expected 'vertex' or 'edge')", col)

    try:
        graph = PlumbingGraph(vertices=tuple(vertices), edges=tuple(edges))
    except ValidationError as e:
        raise GraphValidationError(str(e)) from e
    validate_graph(graph)
    logger.debug("parsed %d vertices, %d edges", len(graph.vertices), len(graph.edges))
    return graph


def serialize_graph(graph):
    """Normalized text form; every key is written explicitly"""
    lines = [f"vertex {v.id} genus={v.genus} euler={v.euler}" for v in graph.vertices]
    for e in graph.edges:
        a, b = e.endpoints
        lines.append(f"edge {a} {b} sign={'+' if e.sign > 0 else '-'}")
    return "\n".join(lines) + "\n"


def load_graph(path):
    """
    Read and parse a graph file (UTF-8)

    Raises:
        GraphParseError: unreadable file or syntax error (message carries the path)
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise GraphParseError(f"cannot read graph file: {e}", path=str(path)) from e
    return parse_graph(text, path=str(path))
