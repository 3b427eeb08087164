"""
Import of quadrilateral grid crease patterns from FOLD documents.
"""
import math
from collections import defaultdict
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import numpy as np

from tessfold.exceptions import InvalidGridSize, MalformedDocument, NonManifold, NonQuadFace
from tessfold.pattern import KIND_IMPORTED, CreasePattern
from tessfold.type_aliases import FloatArray, FoldDocumentType
from tessfold.validators import validate_json_schema

FLATNESS_TOLERANCE = 1e-9
BOUNDARY = "B"

Face = Tuple[int, int, int, int]


def _signed_area(coordinates: FloatArray, cycle: List[int]) -> float:
    points = coordinates[cycle]
    following = np.roll(points, -1, axis=0)
    return 0.5 * float(np.sum(points[:, 0] * following[:, 1] - following[:, 0] * points[:, 1]))


def _trace_faces(coordinates: FloatArray, edges: List[Tuple[int, int]]) -> List[List[int]]:
    """Bounded faces of the planar graph, counter-clockwise"""
    neighbors: Dict[int, List[int]] = defaultdict(list)
    for start, end in edges:
        neighbors[start].append(end)
        neighbors[end].append(start)
    for vertex, adjacent in neighbors.items():
        adjacent.sort(key=lambda other, origin=vertex: math.atan2(coordinates[other][1] - coordinates[origin][1],
                                                                  coordinates[other][0] - coordinates[origin][0]))
    visited: Set[Tuple[int, int]] = set()
    faces = []
    for start, end in edges:
        for half_edge in ((start, end), (end, start)):
            if half_edge in visited:
                continue
            cycle = []
            current = half_edge
            while current not in visited:
                visited.add(current)
                cycle.append(current[0])
                previous, vertex = current
                around = neighbors[vertex]
                following = around[(around.index(previous) - 1) % len(around)]
                current = (vertex, following)
            if _signed_area(coordinates, cycle) > 0:
                faces.append(cycle)
    return faces


def _oriented(coordinates: FloatArray, cycle: List[int]) -> List[int]:
    return cycle if _signed_area(coordinates, cycle) > 0 else cycle[::-1]


def _check_faces(faces: List[List[int]]) -> Dict[FrozenSet[int], List[int]]:
    edge_faces: Dict[FrozenSet[int], List[int]] = defaultdict(list)
    for index, cycle in enumerate(faces):
        if len(cycle) != 4:
            raise NonQuadFace(index, len(cycle))
        for corner, vertex in enumerate(cycle):
            edge_faces[frozenset((vertex, cycle[(corner + 1) % 4]))].append(index)
    for edge, incident in edge_faces.items():
        if len(incident) > 2:
            raise NonManifold(f"edge {sorted(edge)} borders {len(incident)} faces")
    return edge_faces


def _rotated(cycle: List[int], vertex: int, position: int) -> Face:
    """Cycle rotated so that the vertex sits at the position"""
    shift = cycle.index(vertex) - position
    rotated = [cycle[(index + shift) % 4] for index in range(4)]
    return rotated[0], rotated[1], rotated[2], rotated[3]


def _across(faces: List[List[int]], edge_faces: Dict[FrozenSet[int], List[int]], face: int,
            first: int, second: int) -> Optional[int]:
    others = [other for other in edge_faces[frozenset((first, second))] if other != face]
    return others[0] if others else None


def _recover_grid(coordinates: FloatArray, faces: List[List[int]],
                  edge_faces: Dict[FrozenSet[int], List[int]]) -> List[List[Face]]:
    """
    Arrange the faces in rows and columns starting from the top-left corner face. Every face is returned as
    (bottom-left, bottom-right, top-right, top-left).
    """
    vertex_faces: Dict[int, List[int]] = defaultdict(list)
    for index, cycle in enumerate(faces):
        for vertex in cycle:
            vertex_faces[vertex].append(index)
    corners = [vertex for vertex, incident in vertex_faces.items() if len(incident) == 1]
    if not corners:
        raise MalformedDocument("the faces do not form a quadrilateral grid with corners")
    top_left = max(corners, key=lambda vertex: (coordinates[vertex][1] - coordinates[vertex][0], -vertex))

    grid: List[List[Face]] = []
    row_start: Optional[Face] = _rotated(faces[vertex_faces[top_left][0]], top_left, 3)
    row_start_index: Optional[int] = vertex_faces[top_left][0]
    while row_start is not None and row_start_index is not None:
        row = [row_start]
        face, index = row_start, row_start_index
        while True:
            right = _across(faces, edge_faces, index, face[1], face[2])
            if right is None:
                break
            face, index = _rotated(faces[right], face[2], 3), right
            row.append(face)
        grid.append(row)
        below = _across(faces, edge_faces, row_start_index, row_start[0], row_start[1])
        if below is None:
            row_start, row_start_index = None, None
        else:
            row_start, row_start_index = _rotated(faces[below], row_start[0], 3), below
    if len(grid) * len(grid[0]) != len(faces) or any(len(row) != len(grid[0]) for row in grid):
        raise MalformedDocument("the faces do not form a rectangular quadrilateral grid")
    return grid


def _grid_vertices(grid: List[List[Face]]) -> List[int]:
    rows, cols = len(grid), len(grid[0])
    order = [-1] * ((rows + 1) * (cols + 1))
    for row in range(rows):
        for col in range(cols):
            bottom_left, bottom_right, top_right, top_left = grid[row][col]
            for (grid_row, grid_col), vertex in (((row + 1, col), bottom_left), ((row + 1, col + 1), bottom_right),
                                                 ((row, col + 1), top_right), ((row, col), top_left)):
                slot = grid_row * (cols + 1) + grid_col
                if order[slot] not in (-1, vertex):
                    raise MalformedDocument(f"vertex {vertex} does not fit the recovered grid")
                order[slot] = vertex
    if -1 in order or len(set(order)) != len(order):
        raise MalformedDocument("the recovered grid does not use every vertex exactly once")
    return order


def import_fold(document: FoldDocumentType) -> CreasePattern:
    """
    Build a crease pattern from a flat FOLD document.

    Faces are taken from faces_vertices or traced from the edges. They must be quadrilaterals that form a rectangular
    grid, edges assigned as boundary must lie on its perimeter.

    Raises:
        MalformedDocument: the document is not valid FOLD, is folded or does not describe a grid
        NonQuadFace: a face does not have four corners
        NonManifold: an edge borders more than two faces
    """
    valid, message = validate_json_schema(document, "fold.json")
    if not valid:
        raise MalformedDocument(message)
    raw = document["vertices_coords"]
    coordinates = np.array([list(vertex) + [0.0] * (3 - len(vertex)) for vertex in raw], dtype=float)
    scale = max(1.0, float(np.max(np.abs(coordinates[:, :2]))))
    if np.max(np.abs(coordinates[:, 2])) > FLATNESS_TOLERANCE * scale:
        raise MalformedDocument("only flat crease patterns can be imported, the document is folded")
    coordinates = coordinates[:, :2]
    edges = [(int(start), int(end)) for start, end in document["edges_vertices"]]
    if any(not 0 <= vertex < len(coordinates) for edge in edges for vertex in edge):
        raise MalformedDocument("an edge refers to a vertex that does not exist")

    if "faces_vertices" in document:
        faces = [_oriented(coordinates, [int(vertex) for vertex in face]) for face in document["faces_vertices"]]
    else:
        faces = _trace_faces(coordinates, edges)
    if not faces:
        raise MalformedDocument("the document has no faces")
    edge_faces = _check_faces(faces)

    grid = _recover_grid(coordinates, faces, edge_faces)
    order = _grid_vertices(grid)
    rows, cols = len(grid), len(grid[0])
    if rows < 2 or cols < 2:
        raise InvalidGridSize(f"{rows}x{cols}")

    assignments = document.get("edges_assignment", [])
    for index, edge in enumerate(edges):
        key = frozenset(edge)
        if key not in edge_faces:
            raise MalformedDocument(f"edge {index} is not a side of any face")
        if index < len(assignments) and assignments[index] == BOUNDARY and len(edge_faces[key]) != 1:
            raise MalformedDocument(f"edge {index} is assigned as boundary but lies between two faces")
    if len({frozenset(edge) for edge in edges}) != len(edge_faces):
        raise MalformedDocument("face sides are missing from edges_vertices")

    return CreasePattern(coordinates[order], rows, cols, kind=KIND_IMPORTED)
