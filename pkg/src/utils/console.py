"""
Console output helpers shared by the CLI and run.py
"""

import logging
import os
import sys

from utils import config

GREEN = "\033[32m"
RED = "\033[31m"
YELLOW = "\033[33m"
RESET = "\033[0m"


def use_color(stream=None):
    """Colour only on a TTY and only when PLUMB_NO_COLOR is unset"""
    stream = stream or sys.stdout
    if config.NO_COLOR or os.environ.get("PLUMB_NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def paint(text, color, stream=None):
    if not use_color(stream):
        return text
    return f"{color}{text}{RESET}"


def banner(title, width=60, stream=None):
    """
    Print a section banner

    Args:
        title: Section title (upper-cased)
        width: Width of the rule lines
        stream: Output stream (default: stdout)
    """
    stream = stream or sys.stdout
    print("\n" + "=" * width, file=stream)
    print(title.upper(), file=stream)
    print("=" * width, file=stream)


def status(label, ok, detail="", stream=None):
    """Print a ✓/✗ line"""
    stream = stream or sys.stdout
    mark = paint("✓", GREEN, stream) if ok else paint("✗", RED, stream)
    suffix = f" {detail}" if detail else ""
    print(f"{mark} {label}{suffix}", file=stream)


def warn(message, stream=None):
    stream = stream or sys.stderr
    print(paint(f"⚠️  {message}", YELLOW, stream), file=stream)


def error(message, stream=None):
    stream = stream or sys.stderr
    print(paint(f"❌ {message}", RED, stream), file=stream)


def configure_logging(verbose=False):
    """Route library logging to stderr; DEBUG when verbose"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
