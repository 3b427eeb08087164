from typing import List, Optional, Tuple

import numpy as np
import svgwrite

from tessfold.configspace import GlobalMode
from tessfold.pattern import CreasePattern

BOUNDARY_COLOR = "rgb(0, 0, 0)"
MOUNTAIN_COLOR = "rgb(255, 0, 0)"
VALLEY_COLOR = "rgb(0, 0, 255)"
UNASSIGNED_COLOR = "rgb(128, 128, 128)"
COORDINATE_DECIMALS = 6
STROKE_FRACTION = 0.005
MARGIN_FRACTION = 0.05


class SvgGenerator:
    """
    Renders a crease pattern as a static SVG document, one user unit per length unit and the y axis pointing up.

    Boundary edges are drawn first in black, then the creases in crease order: mountains red solid, valleys blue
    dashed and creases without an assignment gray.
    """
    @staticmethod
    def generate(pattern: CreasePattern, mode: Optional[GlobalMode] = None) -> str:
        low = pattern.vertices.min(axis=0)
        high = pattern.vertices.max(axis=0)
        extent = float(np.max(high - low))
        margin = MARGIN_FRACTION * extent
        stroke = SvgGenerator.__round(STROKE_FRACTION * extent)
        width = SvgGenerator.__round(high[0] - low[0] + 2 * margin)
        height = SvgGenerator.__round(high[1] - low[1] + 2 * margin)
        drawing = svgwrite.Drawing(profile="full", size=(width, height),
                                   viewBox=f"0 0 {width} {height}")

        def point(vertex: int) -> Tuple[float, float]:
            x, y = pattern.vertices[vertex]
            return SvgGenerator.__round(x - low[0] + margin), SvgGenerator.__round(high[1] - y + margin)

        for start, end in pattern.boundary_edges:
            drawing.add(drawing.line(point(start), point(end), stroke=BOUNDARY_COLOR, stroke_width=stroke,
                                     stroke_linecap="round"))

        assignment: List[str] = mode.mv_assignment if mode is not None else ["F"] * pattern.crease_count
        for (start, end), letter in zip(pattern.creases, assignment):
            line = drawing.line(point(start), point(end), stroke_width=stroke, stroke_linecap="round")
            if letter == "M":
                line.stroke(MOUNTAIN_COLOR)
            elif letter == "V":
                line.stroke(VALLEY_COLOR)
                line.dasharray([4 * stroke, 2 * stroke])
            else:
                line.stroke(UNASSIGNED_COLOR)
            drawing.add(line)
        return str(drawing.tostring())

    @staticmethod
    def __round(value: float) -> float:
        return round(float(value), COORDINATE_DECIMALS) + 0.0
