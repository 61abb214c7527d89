"""
SVG output through matplotlib

Text stays as <text> elements and the hash salt and date metadata are
pinned, so equal diagrams give equal bytes.
"""

import io

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import FancyBboxPatch  # noqa: E402

from render.spec import layout_diagram  # noqa: E402

SVG_RC = {"svg.fonttype": "none", "svg.hashsalt": "plumb", "path.simplify": False}


def render_svg(diagram, spec):
    """
    Args:
        diagram: SymbolicDiagram
        spec: RenderSpec

    Returns:
        str: SVG document
    """
    layout = layout_diagram(diagram, spec)
    colors = spec.colors
    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(max(layout.width, 4.0), max(layout.height, 3.0)))
        for _, x, y, w, h in layout.panels:
            ax.add_patch(
                FancyBboxPatch(
                    (x, y),
                    w,
                    h,
                    boxstyle="round,pad=0.05,rounding_size=0.3",
                    facecolor=colors["panel"],
                    edgecolor="black",
                    linewidth=0.8,
                )
            )
        for _, kind, points, _ in layout.tubes:
            xs, ys = zip(*points)
            width = 72 * spec.tube_width / 2 if kind in ("main", "drill") else 72 * spec.tube_width / 3
            ax.plot(xs, ys, color=colors["tube"], linewidth=width, alpha=0.35, solid_capstyle="butt")
        for _, color, points in layout.curves:
            if points:
                xs, ys = zip(*points)
                ax.plot(xs, ys, color=colors[color], linewidth=1.0)
        for text, x, y, key in layout.labels:
            ax.text(x, y, text, color=colors.get(key, "black"), fontsize=7, ha="left", va="bottom")
        ax.set_xlim(0, max(layout.width, 1.0))
        ax.set_ylim(0, max(layout.height, 1.0))
        ax.set_aspect("equal")
        ax.axis("off")
        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buffer.getvalue()
