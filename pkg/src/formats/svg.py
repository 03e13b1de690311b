"""SVG drawings of realizations and invalid-parameter loci"""
import logging
from itertools import combinations
from typing import Optional, Sequence, Tuple

import numpy as np
import svgwrite

from src.models.configuration import InvalidityReason, LocusReport
from src.models.realization import Realization, SvgStyle

logger = logging.getLogger(__name__)


def _r(value: float) -> float:
    return round(float(value), 3)


class CanvasFrame:
    """Maps model coordinates into a square canvas with the y-axis pointing up"""

    def __init__(self, low: np.ndarray, high: np.ndarray, style: SvgStyle):
        span = max(float(np.max(high - low)), 1e-12)
        self.scale = (style.size - 2 * style.margin) / span
        self.low = low
        self.style = style
        self.offset = (style.size - 2 * style.margin - (high - low) * self.scale) / 2

    def __call__(self, point: Sequence[float]) -> Tuple[float, float]:
        x = self.style.margin + self.offset[0] + (point[0] - self.low[0]) * self.scale
        y = self.style.size - self.style.margin - self.offset[1] - (point[1] - self.low[1]) * self.scale
        return _r(x), _r(y)


def _block_segment(points: np.ndarray, block: Sequence[int], extension: float) -> Tuple[np.ndarray, np.ndarray]:
    """Segment through the two farthest marks of a block, overhanging both ends"""
    _, x, y = max((float(np.linalg.norm(points[x - 1] - points[y - 1])), x, y) for x, y in combinations(block, 2))
    start, end = points[x - 1], points[y - 1]
    overhang = (end - start) * extension
    return start - overhang, end + overhang


def write_svg(realization: Realization, style: Optional[SvgStyle] = None) -> str:
    """Blocks as extended segments, marks as labelled filled circles"""
    style = style or SvgStyle()
    points = np.asarray(realization.points, dtype=float)
    segments = [_block_segment(points, block, style.line_extension) for block in realization.structure.blocks]

    extent = np.vstack([points] + [np.vstack(segment) for segment in segments])
    frame = CanvasFrame(extent.min(axis=0), extent.max(axis=0), style)

    drawing = svgwrite.Drawing(size=(style.size, style.size), profile="full", debug=False)
    drawing.add(drawing.rect(insert=(0, 0), size=(style.size, style.size), fill="white"))

    lines = drawing.add(drawing.g(id="blocks", stroke=style.line_color, stroke_width=style.line_width))
    for j, (start, end) in enumerate(segments, start=1):
        lines.add(drawing.line(start=frame(start), end=frame(end), class_="block", id=f"block-{j}"))

    marks = drawing.add(drawing.g(id="marks", fill=style.point_color))
    for mark, point in enumerate(points, start=1):
        center = frame(point)
        marks.add(drawing.circle(center=center, r=style.point_radius, class_="mark", id=f"mark-{mark}"))
        if style.labels:
            marks.add(
                drawing.text(
                    str(mark),
                    insert=(_r(center[0] + style.point_radius + 1), _r(center[1] - style.point_radius - 1)),
                    font_size=style.font_size,
                    font_family="sans-serif",
                )
            )

    logger.debug(f"Rendered realization with {len(points)} marks")
    return drawing.tostring()


# Each locus line as (point, direction) in the (a, b) plane, scaled by n
LOCUS_LINES = {
    InvalidityReason.B_EQ_HALF_N_PLUS_A: ((0.0, 0.5), (1.0, 1.0)),
    InvalidityReason.A_EQ_HALF_N: ((0.5, 0.0), (0.0, 1.0)),
    InvalidityReason.B_EQ_HALF_N: ((0.0, 0.5), (1.0, 0.0)),
    InvalidityReason.B_EQ_N_MINUS_A: ((0.0, 1.0), (1.0, -1.0)),
    InvalidityReason.B_EQ_HALF_N_PLUS_A_OVER_2: ((0.0, 0.5), (2.0, 1.0)),
    InvalidityReason.B_EQ_2A: ((0.0, 0.0), (1.0, 2.0)),
}


def clip_to_parameter_triangle(
    point: Sequence[float], direction: Sequence[float], n: float
) -> Optional[Tuple[Tuple[float, float], Tuple[float, float]]]:
    """Clip a line to 0 <= a <= b <= n; None if it misses the triangle"""
    # c0 + ca * a + cb * b >= 0
    half_planes = [(0.0, 1.0, 0.0), (n, 0.0, -1.0), (0.0, -1.0, 1.0)]
    t_low, t_high = -np.inf, np.inf
    for c0, ca, cb in half_planes:
        value = c0 + ca * point[0] + cb * point[1]
        rate = ca * direction[0] + cb * direction[1]
        if rate == 0:
            if value < 0:
                return None
            continue
        bound = -value / rate
        if rate > 0:
            t_low = max(t_low, bound)
        else:
            t_high = min(t_high, bound)
    if t_low >= t_high:
        return None
    return (
        (point[0] + t_low * direction[0], point[1] + t_low * direction[1]),
        (point[0] + t_high * direction[0], point[1] + t_high * direction[1]),
    )


def write_locus_svg(locus: LocusReport, style: Optional[SvgStyle] = None) -> str:
    """Axes a (horizontal) and b (vertical), the six invalidity lines, invalid pairs and the triple point"""
    style = style or SvgStyle()
    n = locus.n
    frame = CanvasFrame(np.array([0.0, 0.0]), np.array([float(n), float(n)]), style)

    drawing = svgwrite.Drawing(size=(style.size, style.size), profile="full", debug=False)
    drawing.add(drawing.rect(insert=(0, 0), size=(style.size, style.size), fill="white"))

    axes = drawing.add(drawing.g(id="axes", stroke="black", stroke_width=style.line_width))
    axes.add(drawing.line(start=frame((0, 0)), end=frame((n, 0)), class_="axis", id="axis-a"))
    axes.add(drawing.line(start=frame((0, 0)), end=frame((0, n)), class_="axis", id="axis-b"))
    drawing.add(drawing.text("a", insert=frame((n, 0)), font_size=style.font_size, dy=[style.font_size]))
    drawing.add(drawing.text("b", insert=frame((0, n)), font_size=style.font_size, dx=[-style.font_size]))

    if locus.triangle_vertices:
        drawing.add(
            drawing.polygon(
                [frame(v) for v in locus.triangle_vertices],
                fill=style.highlight_color,
                fill_opacity=0.08,
                class_="locus-triangle",
            )
        )

    lines = drawing.add(drawing.g(id="locus-lines", stroke=style.line_color, stroke_width=style.line_width))
    for reason, (point, direction) in LOCUS_LINES.items():
        clipped = clip_to_parameter_triangle((point[0] * n, point[1] * n), direction, n)
        if clipped is None:
            continue
        start, end = clipped
        lines.add(drawing.line(start=frame(start), end=frame(end), class_="locus-line", id=f"line-{reason.value}"))

    pairs = drawing.add(drawing.g(id="invalid-pairs", fill=style.point_color))
    for entry in locus.entries:
        pairs.add(drawing.circle(center=frame((entry.a, entry.b)), r=style.point_radius * 0.6, class_="invalid-pair"))

    if locus.triple_intersection_point is not None:
        drawing.add(
            drawing.circle(
                center=frame(locus.triple_intersection_point),
                r=style.point_radius * 1.6,
                fill="none",
                stroke=style.highlight_color,
                stroke_width=style.line_width * 2,
                class_="triple-intersection",
            )
        )

    logger.debug(f"Rendered locus for n={n} with {len(locus.entries)} invalid pairs")
    return drawing.tostring()
