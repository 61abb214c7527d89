"""
Render settings and schematic layout shared by the SVG and TikZ writers

The layout is schematic: vertex i sits in column i with its top panel above
its bottom panel and vertical cylinders join them. Handle and edge tubes
are drawn as bridges dipping into the gap between the two levels. Curves
are polylines through their stations.
"""

import re
from pathlib import Path
from typing import Literal

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from surface.crossings import tube_crossing_counts
from utils.config import RENDER_DEFAULTS
from utils.errors import PlumbError

SIGN_LABEL = {1: "+", -1: "-"}
HEX_COLOR = re.compile(r"^#[0-9A-Fa-f]{6}$")


class RenderSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    format: Literal["svg", "tikz"] = "svg"
    panel_width: float = Field(RENDER_DEFAULTS["panel_width"], gt=0)
    panel_height: float = Field(RENDER_DEFAULTS["panel_height"], gt=0)
    panel_spacing: float = Field(RENDER_DEFAULTS["panel_spacing"], ge=0)
    level_gap: float = Field(RENDER_DEFAULTS["level_gap"], gt=0)
    tube_width: float = Field(RENDER_DEFAULTS["tube_width"], gt=0)
    colors: dict[str, str] = Field(default_factory=lambda: dict(RENDER_DEFAULTS["colors"]))

    @field_validator("colors")
    @classmethod
    def _hex_colors(cls, colors):
        # TikZ output defines every colour with \definecolor{...}{HTML}{RRGGBB}
        bad = sorted(name for name, value in colors.items() if not HEX_COLOR.match(value))
        if bad:
            raise ValueError(f"colours must be #RRGGBB: {', '.join(bad)}")
        return colors


def load_style(path, fmt="svg"):
    """
    RenderSpec from a YAML file overriding RENDER_DEFAULTS keys

    Raises:
        PlumbError: unreadable file or unknown/invalid keys
    """
    try:
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    except (OSError, yaml.YAMLError) as e:
        raise PlumbError(f"cannot read style file {path}: {e}") from e
    if not isinstance(data, dict):
        raise PlumbError(f"style file {path} must hold a mapping")
    unknown = sorted(set(data) - set(RENDER_DEFAULTS))
    if unknown:
        raise PlumbError(f"unknown style keys in {path}: {', '.join(unknown)}")
    overrides = data.pop("colors", None) or {}
    if not isinstance(overrides, dict):
        raise PlumbError(f"colors in {path} must be a mapping")
    colors = dict(RENDER_DEFAULTS["colors"])
    colors.update(overrides)
    try:
        return RenderSpec(format=fmt, colors=colors, **data)
    except ValidationError as e:
        raise PlumbError(f"invalid style file {path}:\n{e}") from e


class Layout(BaseModel):
    """Everything a writer draws, in diagram units"""

    # (id, x, y, width, height)
    panels: list[tuple[str, float, float, float, float]] = []
    # (tube id, kind, list of points, sign label or "")
    tubes: list[tuple[str, str, list[tuple[float, float]], str]] = []
    # (curve id, colour, polyline)
    curves: list[tuple[str, str, list[tuple[float, float]]]] = []
    # (text, x, y, colour key)
    labels: list[tuple[str, float, float, str]] = []
    width: float = 0.0
    height: float = 0.0


def layout_diagram(diagram, spec):
    """
    Place panels, ports, stations and curves

    Returns:
        Layout
    """
    vertices = list(dict.fromkeys(p.vertex for p in diagram.panels))
    column = {v: i for i, v in enumerate(vertices)}
    step = spec.panel_width + spec.panel_spacing
    layout = Layout()

    port_xy = {}
    port_side = {}
    for panel in diagram.panels:
        x0 = spec.panel_spacing + column[panel.vertex] * step
        y0 = spec.level_gap + spec.panel_height if panel.side == "top" else spec.panel_height
        layout.panels.append((panel.id, x0, y0, spec.panel_width, spec.panel_height))
        n = len(panel.ports)
        for j, port in enumerate(panel.ports):
            port_side[port] = panel.side
            # top ports on the lower edge of the top panel, bottom ports on the upper edge
            edge_y = y0 if panel.side == "top" else y0 + spec.panel_height
            port_xy[port] = (x0 + (j + 1) * spec.panel_width / (n + 1), edge_y)

    station_xy = {}
    counts = tube_crossing_counts(diagram) if diagram.curves else {}
    for t in diagram.tubes:
        (xa, ya), (xb, yb) = port_xy[t.ports[0]], port_xy[t.ports[1]]
        if t.kind in ("main", "drill"):
            points = [(xa, ya), (xb, yb)]
        else:
            # bridges dip into the gap between the two levels
            lift = spec.level_gap * 0.25 * (1 if port_side[t.ports[0]] == "top" else -1)
            points = [(xa, ya), (xa, ya - lift), (xb, yb - lift), (xb, yb)]
        label = SIGN_LABEL.get(t.sign, "")
        layout.tubes.append((t.id, t.kind, points, label))
        mid_x, mid_y = (points[1][0] + points[-2][0]) / 2, (points[1][1] + points[-2][1]) / 2
        if label:
            layout.labels.append((label, mid_x + spec.tube_width, mid_y, "tube"))
        if counts.get(t.id):
            layout.labels.append((f"x{counts[t.id]}", mid_x - 2 * spec.tube_width, mid_y, "tube"))
        n = len(t.stations)
        for k, strand in enumerate(t.stations):
            dx = spec.tube_width * ((k + 0.5) / n - 0.5)
            for port in t.ports:
                px, py = port_xy[port]
                station_xy[(port, strand)] = (px + dx, py)

    for c in diagram.curves:
        points = []
        for arc in c.arcs:
            points.append(station_xy[(arc.start.port, arc.start.strand)])
            points.append(station_xy[(arc.end.port, arc.end.strand)])
        if points:
            points.append(points[0])
        layout.curves.append((c.id, c.color, points))
        twist = sum(s.twist for s in c.passes)
        text = c.id if not twist else f"{c.id} ({twist:+d})"
        lx, ly = points[0] if points else (0.0, 0.0)
        layout.labels.append((text, lx, ly, c.color))

    layout.width = spec.panel_spacing + len(vertices) * step
    layout.height = 2 * spec.level_gap + 2 * spec.panel_height
    return layout
