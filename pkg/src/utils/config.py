"""
Configuration file for the plumbing-graph to Heegaard-diagram pipeline
"""

import os
from pathlib import Path

# Get project root directory (parent of src/)
PROJECT_ROOT = Path(__file__).parent.parent.parent

# Shipped graph files; allow override via environment variable
FIXTURES_DIR = Path(os.environ.get("PLUMB_FIXTURES_DIR", PROJECT_ROOT / "fixtures"))

# Version stamped into every serialized diagram document
DIAGRAM_FORMAT_VERSION = 1

# Graph file defaults
DEFAULT_GENUS = 0
DEFAULT_EULER = 0
DEFAULT_SIGN = 1

# Cocycle optimization: exhaustive search up to this many vertices, greedy above
EXHAUSTIVE_GAUGE_LIMIT = int(os.environ.get("PLUMB_EXHAUSTIVE_LIMIT", "16"))

# Any non-empty value disables ANSI colour in reports
NO_COLOR = bool(os.environ.get("PLUMB_NO_COLOR", ""))

# CLI exit codes
EXIT_CODES = {
    "ok": 0,
    "verification": 1,
    "parse": 2,
    "plan": 3,
}

# Rendering parameters (overridable per run with a YAML style file)
RENDER_DEFAULTS = {
    "panel_width": 4.0,
    "panel_height": 1.2,
    "panel_spacing": 1.5,
    "level_gap": 3.0,
    "tube_width": 0.35,
    "colors": {"red": "#c0392b", "blue": "#2471a3", "panel": "#fdf2e9", "tube": "#7f8c8d"},
}

# Seed for the property-based test suites
RANDOM_STATE = 42

# Worker threads for `plumb verify` over several files
VERIFY_JOBS = int(os.environ.get("PLUMB_VERIFY_JOBS", "4"))
