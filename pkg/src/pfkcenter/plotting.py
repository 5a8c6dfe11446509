"""Deterministic SVG rendering of a clustered front.

Hand-rolled markup instead of a plotting library so identical inputs
produce byte-identical files.
"""

from __future__ import annotations

from .dp import Solution

__all__ = ["render_svg", "write_svg"]

_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)

_WIDTH = 640
_HEIGHT = 480
_MARGIN = 24.0


def render_svg(solution: Solution) -> str:
    """Scatter of the front colored by cluster, plus one covering circle
    of the optimal radius around each center."""
    front = solution.front
    xs, ys = front.xs, front.ys
    r = solution.opt_radius
    xmin = min(float(xs.min()), min(c.center.obj1 for c in solution.centers) - r)
    xmax = max(float(xs.max()), max(c.center.obj1 for c in solution.centers) + r)
    ymin = min(float(ys.min()), min(c.center.obj2 for c in solution.centers) - r)
    ymax = max(float(ys.max()), max(c.center.obj2 for c in solution.centers) + r)
    spanx = xmax - xmin or 1.0
    spany = ymax - ymin or 1.0
    # one scale for both axes so circles stay circles
    scale = min((_WIDTH - 2 * _MARGIN) / spanx, (_HEIGHT - 2 * _MARGIN) / spany)
    offx = (_WIDTH - scale * spanx) / 2.0
    offy = (_HEIGHT - scale * spany) / 2.0

    def sx(v: float) -> float:
        return offx + (v - xmin) * scale

    def sy(v: float) -> float:
        return _HEIGHT - (offy + (v - ymin) * scale)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for t, res in enumerate(solution.centers):
        color = _PALETTE[t % len(_PALETTE)]
        parts.append(
            f'<circle class="cover" cx="{sx(res.center.obj1):.3f}" '
            f'cy="{sy(res.center.obj2):.3f}" r="{r * scale:.3f}" '
            f'fill="none" stroke="{color}" stroke-width="1"/>'
        )
    for t, c in enumerate(solution.clusters):
        color = _PALETTE[t % len(_PALETTE)]
        for i in range(c.lo, c.hi + 1):
            parts.append(
                f'<circle class="pt" cx="{sx(float(xs[i])):.3f}" '
                f'cy="{sy(float(ys[i])):.3f}" r="3" fill="{color}"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(solution: Solution, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(solution))
