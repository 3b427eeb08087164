import math
from typing import List, Optional

from tessfold.configspace import GlobalMode
from tessfold.pattern import CreasePattern
from tessfold.sim import ConfigPoint, reconstruct_3d
from tessfold.type_aliases import FoldDocumentType
from tessfold.utils import round_all
from tessfold.version import __version__

FOLD_SPEC = 1.1
BOUNDARY = "B"
COORDINATE_DIGITS = 15


class FoldGenerator:
    """
    Builds FOLD 1.1 documents of crease patterns. Interior creases come first in crease order, followed by the
    boundary edges counter-clockwise. Fold angles are in degrees, valleys positive.
    """
    @staticmethod
    def generate(pattern: CreasePattern, point: Optional[ConfigPoint] = None,
                 mode: Optional[GlobalMode] = None) -> FoldDocumentType:
        """
        Args:
            pattern: the crease pattern
            point: folded state, exported with 3D coordinates when given
            mode: mode whose mountain-valley assignment labels the creases of a flat export

        Returns:
            The FOLD document
        """
        if point is not None:
            folded = reconstruct_3d(pattern, point).vertices_3d
            coordinates = [round_all(vertex, COORDINATE_DIGITS) for vertex in folded]
            angles = [math.degrees(angle) for angle in point.folding_angles]
            assignment = FoldGenerator.__assignment(angles)
            frame_classes = ["foldedForm"]
        else:
            coordinates = [round_all(vertex, COORDINATE_DIGITS) for vertex in pattern.vertices]
            angles = [0.0] * pattern.crease_count
            assignment = mode.mv_assignment if mode is not None else FoldGenerator.__assignment(angles)
            frame_classes = ["creasePattern"]

        edges = [list(crease) for crease in pattern.creases] + [list(edge) for edge in pattern.boundary_edges]
        boundary_count = len(pattern.boundary_edges)
        return {
            "file_spec": FOLD_SPEC,
            "file_creator": f"tessfold {__version__}",
            "file_classes": ["singleModel"],
            "frame_classes": frame_classes,
            "frame_attributes": ["3D"] if point is not None else ["2D"],
            "vertices_coords": coordinates,
            "edges_vertices": edges,
            "edges_assignment": list(assignment) + [BOUNDARY] * boundary_count,
            "edges_foldAngle": round_all(angles, COORDINATE_DIGITS) + [None] * boundary_count,
            "faces_vertices": [list(face) for face in pattern.faces],
        }

    @staticmethod
    def __assignment(angles: List[float]) -> List[str]:
        return ["V" if angle > 0 else "M" if angle < 0 else "F" for angle in angles]
