"""
Exception hierarchy for the pipeline

Every error knows the CLI exit code it maps to, so the entry point can
report and exit without a lookup table.
"""

from utils.config import EXIT_CODES


class PlumbError(RuntimeError):
    """Base class for all pipeline failures"""

    exit_code = EXIT_CODES["parse"]


class GraphParseError(PlumbError):
    """Syntax error in a graph file, with 1-based line and column"""

    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        location = ""
        if path is not None:
            location += f"{path}:"
        if line is not None:
            location += f"{line}:"
            if column is not None:
                location += f"{column}:"
        super().__init__(f"{location} {message}" if location else message)


class GraphValidationError(PlumbError):
    """Structurally invalid graph (duplicate ids, loops, disconnected...)"""


class PlanError(PlumbError):
    """Drill plan violates the sum condition or another plan invariant"""

    exit_code = EXIT_CODES["plan"]


class DiagramError(PlumbError):
    """Builder precondition or diagram invariant violated"""

    exit_code = EXIT_CODES["plan"]


class CompileError(DiagramError):
    """Diagram cannot be compiled to a combinatorial map"""


class SurfaceError(PlumbError):
    """Operation needs a connected map"""

    exit_code = EXIT_CODES["verification"]
