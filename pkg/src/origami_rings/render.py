"""SVG scatter plots of point sets, coloured by generation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

# One colour per generation index; generations past the end reuse the last.
PALETTE = (
    "#000000",
    "#d62728",
    "#1f77b4",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#17becf",
)


@dataclass(frozen=True)
class RenderSpec:
    window: Optional[tuple[float, float, float, float]] = None  # xmin, xmax, ymin, ymax
    width_px: int = 640
    height_px: int = 640
    point_radius_px: float = 3.0
    color_by_generation: bool = True

    def __post_init__(self):
        if self.width_px <= 0 or self.height_px <= 0 or self.point_radius_px <= 0:
            raise ValueError("image dimensions and point radius must be positive")
        if self.window is not None:
            xmin, xmax, ymin, ymax = self.window
            if not (xmin < xmax and ymin < ymax):
                raise ValueError(f"empty window {self.window}")


def default_window(xs: list[float], ys: list[float], pad: float = 0.05) -> tuple[float, float, float, float]:
    """Bounding box padded by ``pad`` of its extent (a unit box around a single point)."""
    if not xs:
        return (-1.0, 1.0, -1.0, 1.0)
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    w = (xmax - xmin) or 1.0
    h = (ymax - ymin) or 1.0
    return (xmin - pad * w, xmax + pad * w, ymin - pad * h, ymax + pad * h)


def render_svg(points: Iterable[tuple[float, float, int]], spec: RenderSpec = RenderSpec(), title: str = "") -> str:
    """Render ``(x, y, generation)`` triples.  Output is a pure function of the inputs."""
    pts = list(points)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    xmin, xmax, ymin, ymax = spec.window or default_window(xs, ys)
    W, H = spec.width_px, spec.height_px

    def sx(x):
        return (x - xmin) / (xmax - xmin) * W

    def sy(y):
        return (ymax - y) / (ymax - ymin) * H

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="#ffffff"/>',
    ]
    if title:
        out.append(f"<title>{_escape(title)}</title>")
    if xmin < 0 < xmax:
        out.append(f'<line x1="{sx(0):.3f}" y1="0" x2="{sx(0):.3f}" y2="{H}" stroke="#cccccc" stroke-width="1"/>')
    if ymin < 0 < ymax:
        out.append(f'<line x1="0" y1="{sy(0):.3f}" x2="{W}" y2="{sy(0):.3f}" stroke="#cccccc" stroke-width="1"/>')
    r = spec.point_radius_px
    # Highest generation first so the seeds stay visible on top.
    for x, y, g in sorted(pts, key=lambda p: (-p[2], p[0], p[1])):
        if not (xmin <= x <= xmax and ymin <= y <= ymax):
            continue
        color = PALETTE[min(g, len(PALETTE) - 1)] if spec.color_by_generation else PALETTE[0]
        out.append(f'<circle cx="{sx(x):.3f}" cy="{sy(y):.3f}" r="{r:g}" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
