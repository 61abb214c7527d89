"""
Standalone TikZ output
"""

from render.spec import layout_diagram

TEX_ESCAPES = {
    "\\": "\\textbackslash{}",
    "_": "\\_",
    "#": "\\#",
    "%": "\\%",
    "&": "\\&",
    "$": "\\$",
    "{": "\\{",
    "}": "\\}",
}


def _escape(text):
    return "".join(TEX_ESCAPES.get(char, char) for char in text)


def _path(points):
    return " -- ".join(f"({x:.3f},{y:.3f})" for x, y in points)


def render_tikz(diagram, spec):
    """
    Returns:
        str: a complete standalone LaTeX document
    """
    layout = layout_diagram(diagram, spec)
    colors = spec.colors
    lines = [
        "\\documentclass[tikz,border=4pt]{standalone}",
        "\\begin{document}",
        "\\begin{tikzpicture}",
    ]
    for name, value in sorted(colors.items()):
        lines.append(f"\\definecolor{{plumb{name}}}{{HTML}}{{{value.lstrip('#').upper()}}}")
    for _, x, y, w, h in layout.panels:
        lines.append(
            f"\\draw[rounded corners=4pt, fill=plumbpanel] ({x:.3f},{y:.3f}) rectangle ({x + w:.3f},{y + h:.3f});"
        )
    for _, kind, points, _ in layout.tubes:
        width = spec.tube_width if kind in ("main", "drill") else spec.tube_width * 2 / 3
        lines.append(f"\\draw[plumbtube, opacity=0.35, line width={width:.3f}cm] {_path(points)};")
    for _, color, points in layout.curves:
        if points:
            lines.append(f"\\draw[plumb{color}, thin] {_path(points)};")
    for text, x, y, key in layout.labels:
        color = f"plumb{key}" if key in colors else "black"
        lines.append(f"\\node[{color}, anchor=south west, font=\\tiny] at ({x:.3f},{y:.3f}) {{{_escape(text)}}};")
    lines += ["\\end{tikzpicture}", "\\end{document}", ""]
    return "\n".join(lines)
