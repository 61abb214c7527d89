"""
Versioned JSON documents for symbolic diagrams
"""

import json

from pydantic import ValidationError

from diagram.model import SymbolicDiagram
from utils.config import DIAGRAM_FORMAT_VERSION
from utils.errors import DiagramError


def to_json(diagram, indent=2):
    """Deterministic JSON text: fixed key order, trailing newline"""
    return json.dumps(diagram.model_dump(mode="json", by_alias=True), indent=indent, sort_keys=False) + "\n"


def from_json(text):
    """
    Load a diagram document

    Raises:
        DiagramError: malformed JSON, schema violation or unsupported version
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DiagramError(f"diagram document is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise DiagramError("diagram document must be a JSON object")
    if data.get("version") != DIAGRAM_FORMAT_VERSION:
        raise DiagramError(f"unsupported diagram format version {data.get('version')!r}")
    try:
        return SymbolicDiagram.model_validate(data)
    except ValidationError as e:
        raise DiagramError(f"invalid diagram document: {e.error_count()} errors\n{e}") from e
