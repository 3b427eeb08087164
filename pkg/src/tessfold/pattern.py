"""
Construction and validation of monohedral quadrilateral crease patterns.

Every pattern is laid out on a face grid of ``rows x cols`` quadrilaterals. Vertices are numbered row-major from the
top-left corner, interior creases follow the reading order left-to-right and top-to-bottom (the vertical creases of a
face row first, then the horizontal creases below it).
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from tessfold.exceptions import (BoundaryVertex, DegenerateTile, InternalInconsistency, InvalidAngle,
                                 InvalidGridSize, MixedVertexGeometry, NonConvexTile, WrongDegree)
from tessfold.type_aliases import FloatArray
from tessfold.vertex import VertexGeometry

ANGLE_TOLERANCE = 1e-9

KIND_ROTATIONAL = "rotational"
KIND_MIURA = "miura"
KIND_CHICKEN_WIRE = "chicken_wire"
KIND_IMPORTED = "imported"


class PatternClass(Enum):
    MIURA_LIKE = "MiuraLike"
    CHICKEN_WIRE_LIKE = "ChickenWireLike"
    GENERIC_FLAT_FOLDABLE = "GenericFlatFoldable"
    GENERIC_NON_FLAT_FOLDABLE = "GenericNonFlatFoldable"
    UNSUPPORTED = "Unsupported"


def _interior_angles(corners: FloatArray) -> FloatArray:
    """Signed interior angle at every corner, positive for a counter-clockwise convex corner"""
    to_next = np.roll(corners, -1, axis=0) - corners
    to_previous = np.roll(corners, 1, axis=0) - corners
    cross = to_next[:, 0] * to_previous[:, 1] - to_next[:, 1] * to_previous[:, 0]
    dot = np.einsum("ij,ij->i", to_next, to_previous)
    return np.arctan2(cross, dot)


def _check_angles(angles: Sequence[float]) -> None:
    if len(angles) != 4:
        raise DegenerateTile(f"a quadrilateral tile has 4 angles, got {len(angles)}")
    for index, angle in enumerate(angles):
        if not math.isfinite(angle):
            raise DegenerateTile(f"angle {index} is not finite")
        if angle <= ANGLE_TOLERANCE:
            raise DegenerateTile(f"angle {index} is {math.degrees(angle):.6g} degrees")
        if angle >= math.pi - ANGLE_TOLERANCE:
            raise NonConvexTile(f"angle {index} is {math.degrees(angle):.6g} degrees")
    total = float(sum(angles))
    if abs(total - 2 * math.pi) > ANGLE_TOLERANCE:
        raise NonConvexTile(f"angles sum to {math.degrees(total):.9g} degrees instead of 360")


@dataclass(frozen=True, eq=False)
class QuadTile:
    """
    The generating quadrilateral of a monohedral tessellation.

    Corners are listed counter-clockwise. The interior angles alpha, beta, gamma and delta sit at corners 0, 1, 2 and 3.
    """
    corners: FloatArray

    def __post_init__(self) -> None:
        corners = np.array(self.corners, dtype=float)
        if corners.shape != (4, 2) or not np.all(np.isfinite(corners)):
            raise DegenerateTile("a tile needs four finite planar corners")
        sides = np.linalg.norm(np.roll(corners, -1, axis=0) - corners, axis=1)
        diameter = float(np.max(np.linalg.norm(corners[:, None, :] - corners[None, :, :], axis=2)))
        if diameter <= 0.0 or np.min(sides) <= ANGLE_TOLERANCE * diameter:
            raise DegenerateTile("two corners coincide")
        angles = _interior_angles(corners)
        for index, angle in enumerate(angles):
            if abs(angle) <= ANGLE_TOLERANCE:
                raise DegenerateTile(f"angle {index} collapses to zero")
            if angle < 0.0 or angle >= math.pi - ANGLE_TOLERANCE:
                raise NonConvexTile(f"corner {index} is reflex, straight or clockwise")
        if abs(float(np.sum(angles)) - 2 * math.pi) > ANGLE_TOLERANCE:
            raise NonConvexTile("the corners do not form a simple quadrilateral")
        corners.setflags(write=False)
        object.__setattr__(self, "corners", corners)

    @classmethod
    def from_angles(cls, angles: Sequence[float], lengths: Optional[Sequence[float]] = None) -> "QuadTile":
        """
        Build a tile from its four interior angles (radians).

        Args:
            angles: alpha, beta, gamma, delta
            lengths: optional lengths of the sides 0-1 and 1-2, the other two sides are solved for

        Without lengths a flat-foldable tile is inscribed in a circle, any other tile gets a unit first side and the
        middle of the admissible range for the second side.

        Raises:
            DegenerateTile: an angle is not positive
            NonConvexTile: an angle is not below 180 degrees, the angles do not sum to 360 degrees or the lengths
                cannot close the quadrilateral
        """
        angles = [float(angle) for angle in angles]
        _check_angles(angles)
        alpha, beta, gamma, _ = angles
        if lengths is None and abs(alpha + gamma - math.pi) <= ANGLE_TOLERANCE:
            return cls(_inscribed_corners(alpha, beta, gamma))

        directions = [0.0, math.pi - beta, 2 * math.pi - beta - gamma, math.pi + alpha]
        edges = np.array([[math.cos(angle), math.sin(angle)] for angle in directions])
        closing = edges[2:].T

        def solve_last_two(first: float, second: float) -> FloatArray:
            return np.asarray(np.linalg.solve(closing, -(first * edges[0] + second * edges[1])))

        if lengths is not None:
            if len(lengths) != 2 or min(lengths) <= 0:
                raise DegenerateTile("two positive side lengths are required")
            first, second = float(lengths[0]), float(lengths[1])
            last_two = solve_last_two(first, second)
            if np.min(last_two) <= 0:
                raise NonConvexTile("the given side lengths cannot close the quadrilateral")
        else:
            first = 1.0
            base = solve_last_two(first, 0.0)
            slope = solve_last_two(first, 1.0) - base
            low, high = 0.0, math.inf
            for offset, rate in zip(base, slope):
                if abs(rate) <= ANGLE_TOLERANCE:
                    if offset <= 0:
                        raise NonConvexTile("no side lengths close the quadrilateral")
                elif rate > 0:
                    low = max(low, -offset / rate)
                else:
                    high = min(high, -offset / rate)
            if low >= high:
                raise NonConvexTile("no side lengths close the quadrilateral")
            second = 0.5 * (low + high) if math.isfinite(high) else low + 1.0

        corners = np.zeros((4, 2))
        corners[1] = corners[0] + first * edges[0]
        corners[2] = corners[1] + second * edges[1]
        corners[3] = corners[2] + solve_last_two(first, second)[0] * edges[2]
        return cls(corners)

    @cached_property
    def angles(self) -> Tuple[float, float, float, float]:
        alpha, beta, gamma, delta = (float(angle) for angle in _interior_angles(self.corners))
        return alpha, beta, gamma, delta

    @property
    def alpha(self) -> float:
        return self.angles[0]

    @property
    def beta(self) -> float:
        return self.angles[1]

    @property
    def gamma(self) -> float:
        return self.angles[2]

    @property
    def delta(self) -> float:
        return self.angles[3]

    def is_inscribable(self) -> bool:
        """Opposite angles supplementary, equivalent to flat-foldability of every generated vertex"""
        return abs(self.alpha + self.gamma - math.pi) <= ANGLE_TOLERANCE

    def is_parallelogram(self) -> bool:
        return abs(self.alpha - self.gamma) <= ANGLE_TOLERANCE and abs(self.beta - self.delta) <= ANGLE_TOLERANCE


def _inscribed_corners(alpha: float, beta: float, gamma: float) -> FloatArray:
    # arc k is the central angle of side k, an inscribed angle is half of the arc opposite to it
    low = max(0.0, 2 * beta - 2 * gamma)
    high = min(2 * alpha, 2 * beta)
    if low >= high:
        raise NonConvexTile("the angles do not fit in a circle")
    third = 0.5 * (low + high)
    arcs = [2 * gamma - 2 * beta + third, 2 * alpha - third, third]
    positions = np.cumsum([0.0] + arcs)
    points = np.column_stack([np.cos(positions), np.sin(positions)])
    points = points - points[0]
    first_side = points[1]
    scale = float(np.linalg.norm(first_side))
    cos_a, sin_a = first_side / scale
    rotation = np.array([[cos_a, sin_a], [-sin_a, cos_a]])
    return np.asarray(points @ rotation.T / scale)


@dataclass(frozen=True, eq=False)
class CreasePattern:
    """
    A quadrilateral-grid crease pattern.

    ``vertices`` holds the planar coordinates of the ``(rows + 1) x (cols + 1)`` grid vertices, row-major from the
    top-left corner. Only interior creases fold, boundary edges are not creases.
    """
    vertices: FloatArray
    rows: int
    cols: int
    tile: Optional[QuadTile] = None
    kind: str = KIND_IMPORTED

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise InvalidGridSize(f"{self.rows}x{self.cols}")
        vertices = np.array(self.vertices, dtype=float)
        if vertices.shape != ((self.rows + 1) * (self.cols + 1), 2):
            raise InternalInconsistency(f"{len(vertices)} vertices do not form a {self.rows}x{self.cols} face grid")
        vertices.setflags(write=False)
        object.__setattr__(self, "vertices", vertices)

    def vertex_id(self, row: int, col: int) -> int:
        return row * (self.cols + 1) + col

    def grid_position(self, vertex: int) -> Tuple[int, int]:
        return divmod(vertex, self.cols + 1)

    def is_interior(self, vertex: int) -> bool:
        row, col = self.grid_position(vertex)
        return 0 < row < self.rows and 0 < col < self.cols

    def vertical_crease(self, row: int, col: int) -> int:
        """Index of the crease from vertex (row, col) down to (row + 1, col), 0 < col < cols"""
        return row * (2 * self.cols - 1) + col - 1

    def horizontal_crease(self, row: int, col: int) -> int:
        """Index of the crease from vertex (row, col) right to (row, col + 1), 0 < row < rows"""
        return (row - 1) * (2 * self.cols - 1) + self.cols - 1 + col

    @cached_property
    def creases(self) -> List[Tuple[int, int]]:
        creases = []
        for row in range(self.rows):
            for col in range(1, self.cols):
                creases.append((self.vertex_id(row, col), self.vertex_id(row + 1, col)))
            if row < self.rows - 1:
                for col in range(self.cols):
                    creases.append((self.vertex_id(row + 1, col), self.vertex_id(row + 1, col + 1)))
        return creases

    @property
    def crease_count(self) -> int:
        return len(self.creases)

    @cached_property
    def boundary_edges(self) -> List[Tuple[int, int]]:
        """Perimeter edges in counter-clockwise order starting at the bottom-left corner"""
        loop = [self.vertex_id(self.rows, col) for col in range(self.cols + 1)]
        loop += [self.vertex_id(row, self.cols) for row in range(self.rows - 1, -1, -1)]
        loop += [self.vertex_id(0, col) for col in range(self.cols - 1, -1, -1)]
        loop += [self.vertex_id(row, 0) for row in range(1, self.rows + 1)]
        return list(zip(loop[:-1], loop[1:]))

    @cached_property
    def faces(self) -> List[Tuple[int, int, int, int]]:
        """Counter-clockwise vertex cycles, face (row, col) has index row * cols + col"""
        return [(self.vertex_id(row + 1, col), self.vertex_id(row + 1, col + 1), self.vertex_id(row, col + 1),
                 self.vertex_id(row, col)) for row in range(self.rows) for col in range(self.cols)]

    @cached_property
    def interior_vertices(self) -> List[int]:
        return [self.vertex_id(row, col) for row in range(1, self.rows) for col in range(1, self.cols)]

    @cached_property
    def interior_grid(self) -> Tuple[int, int]:
        return self.rows - 1, self.cols - 1

    def face_neighbors(self, face: int) -> List[Tuple[int, int]]:
        """(neighbor face, shared crease) pairs of a face"""
        row, col = divmod(face, self.cols)
        neighbors = []
        if col < self.cols - 1:
            neighbors.append((face + 1, self.vertical_crease(row, col + 1)))
        if row < self.rows - 1:
            neighbors.append((face + self.cols, self.horizontal_crease(row + 1, col)))
        if col > 0:
            neighbors.append((face - 1, self.vertical_crease(row, col)))
        if row > 0:
            neighbors.append((face - self.cols, self.horizontal_crease(row, col)))
        return neighbors

    def scaled(self, factor: float) -> "CreasePattern":
        tile = QuadTile(self.tile.corners * factor) if self.tile is not None else None
        return CreasePattern(self.vertices * factor, self.rows, self.cols, tile, self.kind)


def _check_grid(rows: int, cols: int) -> None:
    if rows < 2 or cols < 2:
        raise InvalidGridSize(f"{rows}x{cols}")


def _rotate_half_turn(corners: FloatArray, first: int, second: int) -> FloatArray:
    center = 0.5 * (corners[first] + corners[second])
    return np.asarray(2.0 * center - corners)


# corner k of a tile at grid position (r, c) (r counted from the bottom) lands on grid vertex (r + dr, c + dc)
_EVEN_CORNER_OFFSETS = ((0, 0), (0, 1), (1, 1), (1, 0))
_ODD_CORNER_OFFSETS = ((1, 1), (1, 0), (0, 0), (0, 1))
# (right side, top side) corner pairs
_EVEN_SIDES = ((1, 2), (2, 3))
_ODD_SIDES = ((3, 0), (0, 1))


def _tile_grid(tile: QuadTile, rows: int, cols: int, kind: str) -> CreasePattern:
    grid = np.full((rows + 1, cols + 1, 2), np.nan)
    scale = float(np.max(np.abs(tile.corners))) or 1.0
    row_start = tile.corners
    for row in range(rows):
        current = row_start
        for col in range(cols):
            odd = (row + col) % 2 == 1
            offsets = _ODD_CORNER_OFFSETS if odd else _EVEN_CORNER_OFFSETS
            for corner, (d_row, d_col) in enumerate(offsets):
                target = grid[row + d_row, col + d_col]
                if np.isnan(target[0]):
                    grid[row + d_row, col + d_col] = current[corner]
                elif np.linalg.norm(target - current[corner]) > ANGLE_TOLERANCE * scale * (rows + cols):
                    raise InternalInconsistency(f"tile ({row}, {col}) does not meet its neighbors")
            right, _ = _ODD_SIDES if odd else _EVEN_SIDES
            current = _rotate_half_turn(current, *right)
        start_odd = row % 2 == 1
        _, top = _ODD_SIDES if start_odd else _EVEN_SIDES
        row_start = _rotate_half_turn(row_start, *top)
    # grid rows were filled bottom-up, pattern rows run top-down
    vertices = grid[::-1].reshape(-1, 2)
    return CreasePattern(vertices, rows, cols, tile, kind)


def generate_rotationally_symmetric(tile: QuadTile, rows: int, cols: int) -> CreasePattern:
    """
    Tile a rows x cols face patch by repeated half turns of the tile about the midpoints of its sides.

    Raises:
        InvalidGridSize: rows or cols below 2
    """
    _check_grid(rows, cols)
    pattern = _tile_grid(tile, rows, cols, KIND_ROTATIONAL)
    logging.debug("Generated a %dx%d rotationally symmetric pattern with %d creases", rows, cols,
                  pattern.crease_count)
    return pattern


def _check_acute(theta: float) -> None:
    if not 0.0 < theta < math.pi / 2 or not math.isfinite(theta):
        raise InvalidAngle("theta", theta, "0 < theta < pi/2")


def generate_miura(theta: float, len_a: float, len_b: float, rows: int, cols: int) -> CreasePattern:
    """
    Miura-ori: straight horizontal crease lines and zig-zag vertical crease lines, generated by a parallelogram with
    sides len_a (horizontal) and len_b and acute angle theta.

    Raises:
        InvalidAngle: theta outside (0, pi/2)
        InvalidGridSize: rows or cols below 2
    """
    _check_acute(theta)
    _check_grid(rows, cols)
    if len_a <= 0 or len_b <= 0:
        raise DegenerateTile("side lengths must be positive")
    shift = len_b * math.cos(theta)
    height = len_b * math.sin(theta)
    vertices = [(col * len_a + shift * (row % 2), (rows - row) * height)
                for row in range(rows + 1) for col in range(cols + 1)]
    tile = QuadTile(np.array([(0.0, 0.0), (len_a, 0.0), (len_a + shift, height), (shift, height)]))
    return CreasePattern(np.array(vertices), rows, cols, tile, KIND_MIURA)


def generate_chicken_wire(theta: float, len_a: float, len_b: float, rows: int, cols: int) -> CreasePattern:
    """
    Chicken Wire: rotationally symmetric tiling by the isosceles trapezoid with base len_a, legs len_b and base
    angles theta.

    Raises:
        InvalidAngle: theta outside (0, pi/2)
        DegenerateTile: the legs meet before the top side (len_a <= 2 len_b cos theta)
    """
    _check_acute(theta)
    _check_grid(rows, cols)
    if len_a <= 0 or len_b <= 0:
        raise DegenerateTile("side lengths must be positive")
    inset = len_b * math.cos(theta)
    height = len_b * math.sin(theta)
    if len_a - 2 * inset <= ANGLE_TOLERANCE * len_a:
        raise DegenerateTile("the trapezoid legs meet before the top side")
    tile = QuadTile(np.array([(0.0, 0.0), (len_a, 0.0), (len_a - inset, height), (inset, height)]))
    pattern = _tile_grid(tile, rows, cols, KIND_CHICKEN_WIRE)
    return pattern


def _check_interior(pattern: CreasePattern, vertex: int) -> None:
    if not 0 <= vertex < len(pattern.vertices):
        raise BoundaryVertex(vertex)
    if not pattern.is_interior(vertex):
        raise BoundaryVertex(vertex)


def vertex_creases(pattern: CreasePattern, vertex: int) -> Tuple[int, int, int, int]:
    """Global crease indices around an interior vertex in the order right, up, left, down"""
    _check_interior(pattern, vertex)
    row, col = pattern.grid_position(vertex)
    return (pattern.horizontal_crease(row, col), pattern.vertical_crease(row - 1, col),
            pattern.horizontal_crease(row, col - 1), pattern.vertical_crease(row, col))


def crease_directions(pattern: CreasePattern, vertex: int) -> FloatArray:
    """Unit vectors from an interior vertex along its creases (right, up, left, down)"""
    origin = pattern.vertices[vertex]
    directions = []
    for crease in vertex_creases(pattern, vertex):
        start, end = pattern.creases[crease]
        other = end if start == vertex else start
        offset = pattern.vertices[other] - origin
        directions.append(offset / np.linalg.norm(offset))
    return np.array(directions)


def sector_angles(pattern: CreasePattern, vertex: int) -> FloatArray:
    """Counter-clockwise angles from crease k to crease k + 1 around an interior vertex"""
    directions = crease_directions(pattern, vertex)
    if len(directions) != 4:
        raise WrongDegree(vertex, len(directions))
    following = np.roll(directions, -1, axis=0)
    cross = directions[:, 0] * following[:, 1] - directions[:, 1] * following[:, 0]
    dot = np.einsum("ij,ij->i", directions, following)
    return np.mod(np.arctan2(cross, dot), 2 * math.pi)


def vertex_geometry(pattern: CreasePattern, vertex: int) -> VertexGeometry:
    return VertexGeometry(sector_angles(pattern, vertex))


def interior_face_creases(pattern: CreasePattern, face: int) -> Tuple[int, int, int, int]:
    """
    Counter-clockwise crease cycle of a face whose four corners are interior vertices. Crease k runs from face
    corner k to face corner k + 1 (see ``CreasePattern.faces``).
    """
    row, col = divmod(face, pattern.cols)
    if not (0 < row < pattern.rows - 1 and 0 < col < pattern.cols - 1):
        raise BoundaryVertex(pattern.faces[face][0])
    return (pattern.horizontal_crease(row + 1, col), pattern.vertical_crease(row, col + 1),
            pattern.horizontal_crease(row, col), pattern.vertical_crease(row, col))


def interior_faces(pattern: CreasePattern) -> List[int]:
    return [row * pattern.cols + col for row in range(1, pattern.rows - 1) for col in range(1, pattern.cols - 1)]


def check_kawasaki(pattern: CreasePattern, vertex: int) -> bool:
    """
    True when the alternating sector angles around the vertex both sum to 180 degrees.

    Raises:
        BoundaryVertex: vertex is not interior
    """
    angles = sector_angles(pattern, vertex)
    return bool(abs(angles[0] + angles[2] - math.pi) <= ANGLE_TOLERANCE
                and abs(angles[1] + angles[3] - math.pi) <= ANGLE_TOLERANCE)


def tile_angles(pattern: CreasePattern) -> Tuple[float, float, float, float]:
    if pattern.tile is not None:
        return pattern.tile.angles
    return QuadTile(pattern.vertices[list(pattern.faces[0])]).angles


def classify_pattern(pattern: CreasePattern) -> PatternClass:
    """
    Place a pattern in one of the tessellation classes whose self-foldability is known.

    The tile angles are read cyclically, so a tile given from another corner still classifies.

    Raises:
        MixedVertexGeometry: interior vertices do not share one sector-angle multiset
    """
    reference: Optional[FloatArray] = None
    for vertex in pattern.interior_vertices:
        sorted_angles = np.sort(sector_angles(pattern, vertex))
        if reference is None:
            reference = sorted_angles
        elif np.max(np.abs(sorted_angles - reference)) > 1e3 * ANGLE_TOLERANCE:
            raise MixedVertexGeometry()
        if VertexGeometry(sector_angles(pattern, vertex)).doubly_degenerate:
            logging.info("Pattern has a doubly degenerate vertex, class %s", PatternClass.UNSUPPORTED.value)
            return PatternClass.UNSUPPORTED

    angles = tile_angles(pattern)
    pattern_class = _classify_angles(angles)
    logging.info("Pattern classified as %s", pattern_class.value)
    return pattern_class


def _classify_angles(angles: Tuple[float, float, float, float]) -> PatternClass:
    def close(first: float, second: float) -> bool:
        return abs(first - second) <= 1e3 * ANGLE_TOLERANCE

    alpha, beta, gamma, delta = angles
    if close(alpha, gamma) and close(beta, delta):
        return PatternClass.MIURA_LIKE
    flat = close(alpha + gamma, math.pi)
    rotations = [angles[shift:] + angles[:shift] for shift in range(4)]
    if flat:
        for rotated in rotations:
            if close(rotated[0], rotated[1]) and rotated[0] < math.pi / 2 - ANGLE_TOLERANCE:
                return PatternClass.CHICKEN_WIRE_LIKE
    for rotated in rotations:
        if rotated[0] >= math.pi / 2 - ANGLE_TOLERANCE:
            continue
        if flat and not close(rotated[0], rotated[1]):
            return PatternClass.GENERIC_FLAT_FOLDABLE
        if not flat and not close(rotated[0], rotated[1]) and not close(rotated[0], rotated[3]):
            return PatternClass.GENERIC_NON_FLAT_FOLDABLE
        break
    return PatternClass.UNSUPPORTED
