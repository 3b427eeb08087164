"""
Rigid folding along a global mode: angle propagation through the vertices, sampled fold paths, 3D placement of the
faces and the forward force of a driving force along a path.
"""
import logging
import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial.transform import Rotation

from tessfold.configspace import GlobalMode
from tessfold.exceptions import (AngleOutOfRange, DimensionMismatch, InconsistentPlacement, InconsistentPropagation,
                                 InvalidOption)
from tessfold.pattern import CreasePattern, vertex_creases, vertex_geometry
from tessfold.selffold import DrivingForce
from tessfold.type_aliases import FloatArray
from tessfold.vertex import (CLOSURE_REPORT_TOLERANCE, LocalMode, flat_foldable_angles, transfer_general,
                             vertex_closure_residual)

PROPAGATION_TOLERANCE = 1e-9
PLACEMENT_TOLERANCE = 1e-8
SEED_THRESHOLD = 1e-9
MAX_PATH_STEP = math.radians(5.0)
MONOTONICITY_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class ConfigPoint:
    """Folding angles of all creases, valley positive, in crease order"""
    folding_angles: FloatArray

    def __post_init__(self) -> None:
        angles = np.array(self.folding_angles, dtype=float)
        angles.setflags(write=False)
        object.__setattr__(self, "folding_angles", angles)

    def __len__(self) -> int:
        return len(self.folding_angles)

    @classmethod
    def flat(cls, crease_count: int) -> "ConfigPoint":
        return cls(np.zeros(crease_count))


@dataclass(frozen=True, eq=False)
class FoldPath:
    """
    Points of a mode branch from the flat state outwards.

    driver_values are the seed crease angles of the points and chord_lengths the cumulative distance travelled in
    angle space.
    """
    points: Tuple[ConfigPoint, ...]
    driver_values: FloatArray
    chord_lengths: FloatArray
    mode: GlobalMode

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        for name in ("driver_values", "chord_lengths"):
            values = np.array(getattr(self, name), dtype=float)
            values.setflags(write=False)
            object.__setattr__(self, name, values)

    @property
    def angles(self) -> FloatArray:
        """Folding angles of all points, one row per point"""
        return np.array([point.folding_angles for point in self.points])


@dataclass(frozen=True, eq=False)
class FacePlacement:
    """Rigid motion x -> rotation @ x + translation that carries a flat face into its folded position"""
    rotation: FloatArray
    translation: FloatArray

    def __post_init__(self) -> None:
        for name in ("rotation", "translation"):
            values = np.array(getattr(self, name), dtype=float)
            values.setflags(write=False)
            object.__setattr__(self, name, values)

    @classmethod
    def identity(cls) -> "FacePlacement":
        return cls(np.eye(3), np.zeros(3))

    def apply(self, points: FloatArray) -> FloatArray:
        """Folded position of planar points"""
        flat = np.atleast_2d(np.asarray(points, dtype=float))
        if flat.shape[1] == 2:
            flat = np.column_stack([flat, np.zeros(len(flat))])
        return np.asarray(flat @ self.rotation.T + self.translation)


@dataclass(frozen=True, eq=False)
class FoldedState:
    """
    Placement of every face of a folded pattern, face 0 fixed in the z = 0 plane.

    vertices_3d takes each vertex from the lowest numbered face that contains it. max_deviation is the largest
    disagreement found between two placements of a shared crease.
    """
    placements: Tuple[FacePlacement, ...]
    vertices_3d: FloatArray
    max_deviation: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "placements", tuple(self.placements))
        vertices = np.array(self.vertices_3d, dtype=float)
        vertices.setflags(write=False)
        object.__setattr__(self, "vertices_3d", vertices)


def global_closure_residual(pattern: CreasePattern, point: ConfigPoint) -> float:
    """Largest loop-closure residual over the interior vertices"""
    if len(point) != pattern.crease_count:
        raise DimensionMismatch(pattern.crease_count, len(point))
    residuals = [vertex_closure_residual(vertex_geometry(pattern, vertex),
                                         point.folding_angles[list(vertex_creases(pattern, vertex))])
                 for vertex in pattern.interior_vertices]
    return max(residuals, default=0.0)


def seed_crease(mode: GlobalMode) -> int:
    """Crease that drives the fold: crease 0 unless it stays flat in the mode"""
    tangent = mode.tangent
    if abs(tangent[0]) > SEED_THRESHOLD:
        return 0
    return int(np.argmax(np.abs(tangent)))


def _vertex_angles(pattern: CreasePattern, vertex: int, local: FloatArray, driver: int, rho_in: float) -> FloatArray:
    geometry = vertex_geometry(pattern, vertex)
    mode = LocalMode.from_multipliers(local)
    if geometry.flat_foldable:
        return flat_foldable_angles(mode, rho_in, driver)
    return transfer_general(geometry, mode, rho_in, driver=driver)


def propagate_fold(pattern: CreasePattern, mode: GlobalMode, driver: float) -> ConfigPoint:
    """
    Folding angles of the whole pattern along a mode, the seed crease folded to the driver angle.

    Interior vertices are swept in row-major order. Each vertex takes its largest known crease as input and solves
    for the rest, every crease reached twice is checked against the value it already has.

    Raises:
        AngleOutOfRange: |driver| >= pi
        InconsistentPropagation: two vertices disagree on a crease or a vertex cannot be reached
        BranchExhausted: continuation at a vertex hits the fold limit of the mechanism
    """
    tangent = mode.tangent
    if len(tangent) != pattern.crease_count:
        raise DimensionMismatch(pattern.crease_count, len(tangent))
    if not abs(driver) < math.pi:
        raise AngleOutOfRange(driver)
    if driver == 0.0:
        return ConfigPoint.flat(pattern.crease_count)

    seed = seed_crease(mode)
    angles: Dict[int, float] = {seed: driver if tangent[seed] > 0 else -driver}
    pending = list(pattern.interior_vertices)
    while pending:
        progressed = False
        for vertex in list(pending):
            creases = vertex_creases(pattern, vertex)
            local = np.array([tangent[crease] for crease in creases])
            known = [index for index, crease in enumerate(creases) if crease in angles]
            if not known:
                continue
            if not np.any(np.abs(local) > SEED_THRESHOLD):
                result = np.zeros(4)
            else:
                source = max(known, key=lambda index: abs(local[index]))
                if abs(local[source]) <= SEED_THRESHOLD:
                    continue
                result = _vertex_angles(pattern, vertex, local, source, angles[creases[source]])
            for index, crease in enumerate(creases):
                if crease in angles:
                    if abs(angles[crease] - result[index]) > PROPAGATION_TOLERANCE:
                        raise InconsistentPropagation(f"crease {crease} gets {angles[crease]:.12g} and "
                                                      f"{result[index]:.12g} rad at vertex {vertex}")
                else:
                    angles[crease] = float(result[index])
            pending.remove(vertex)
            progressed = True
        if not progressed:
            raise InconsistentPropagation(f"vertices {pending} cannot be reached from crease {seed}")

    point = ConfigPoint(np.array([angles.get(crease, 0.0) for crease in range(pattern.crease_count)]))
    residual = global_closure_residual(pattern, point)
    if residual >= CLOSURE_REPORT_TOLERANCE:
        raise InconsistentPropagation(f"loop closure residual {residual:.3e} after propagation")
    return point


def fold_path(pattern: CreasePattern, mode: GlobalMode, driver_max: float, steps: int,
              workers: int = 1) -> FoldPath:
    """
    Sample a mode branch at evenly spaced tan-half values of the driver angle from the flat state to driver_max.

    Args:
        pattern: the crease pattern
        mode: the branch to follow
        driver_max: seed crease angle of the last point
        steps: number of points, the flat state included
        workers: threads for propagating the points

    Raises:
        InvalidOption: fewer than two steps
    """
    if steps < 2:
        raise InvalidOption(f"a fold path needs at least 2 steps, got {steps}")
    if not abs(driver_max) < math.pi:
        raise AngleOutOfRange(driver_max)
    end = math.tan(0.5 * driver_max)
    drivers = [2.0 * math.atan(end * step / (steps - 1)) for step in range(steps)]

    def propagate(driver: float) -> ConfigPoint:
        return propagate_fold(pattern, mode, driver)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            points = list(executor.map(propagate, drivers))
    else:
        points = [propagate(driver) for driver in drivers]

    angles = np.array([point.folding_angles for point in points])
    jumps = np.abs(np.diff(angles, axis=0))
    chords = np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(angles, axis=0), axis=1))])
    largest = float(np.max(jumps)) if jumps.size else 0.0
    if largest >= MAX_PATH_STEP:
        logging.warning("A crease moves %.2f degrees in one path step, use more steps", math.degrees(largest))
    return FoldPath(tuple(points), np.array(drivers), chords, mode)


def _crease_side(pattern: CreasePattern, face: int, start: FloatArray, end: FloatArray) -> float:
    """+1 when the face lies left of the directed crease, -1 when it lies right"""
    centroid = pattern.vertices[list(pattern.faces[face])].mean(axis=0)
    edge, offset = end - start, centroid - start
    return 1.0 if edge[0] * offset[1] - edge[1] * offset[0] > 0 else -1.0


def reconstruct_3d(pattern: CreasePattern, point: ConfigPoint) -> FoldedState:
    """
    Place the faces of a folded pattern in space, breadth first from face 0.

    A face is rotated about its shared crease by the folding angle relative to the face it is reached from, valley
    folds lifting it towards +z. Every crease between two placed faces is checked for agreement.

    Raises:
        InconsistentPlacement: a crease is placed differently by its two faces
    """
    if len(point) != pattern.crease_count:
        raise DimensionMismatch(pattern.crease_count, len(point))
    placements: Dict[int, FacePlacement] = {0: FacePlacement.identity()}
    queue = deque([0])
    max_deviation = 0.0
    while queue:
        face = queue.popleft()
        placed = placements[face]
        for neighbor, crease in pattern.face_neighbors(face):
            start, end = pattern.creases[crease]
            origin, tip = pattern.vertices[start], pattern.vertices[end]
            axis = np.append(tip - origin, 0.0)
            axis /= np.linalg.norm(axis)
            side = _crease_side(pattern, neighbor, origin, tip)
            relative = Rotation.from_rotvec(axis * side * point.folding_angles[crease])
            anchor = np.append(origin, 0.0)
            rotation = placed.rotation @ relative.as_matrix()
            translation = placed.rotation @ (anchor - relative.apply(anchor)) + placed.translation
            candidate = FacePlacement(rotation, translation)
            if neighbor in placements:
                corners = pattern.vertices[list(pattern.faces[neighbor])]
                deviation = float(np.max(np.linalg.norm(candidate.apply(corners) - placements[neighbor].apply(corners),
                                                        axis=1)))
                max_deviation = max(max_deviation, deviation)
                if deviation > PLACEMENT_TOLERANCE:
                    raise InconsistentPlacement(neighbor, deviation)
            else:
                placements[neighbor] = candidate
                queue.append(neighbor)

    vertices_3d = np.zeros((len(pattern.vertices), 3))
    assigned = np.zeros(len(pattern.vertices), dtype=bool)
    for face, corners in enumerate(pattern.faces):
        for corner in corners:
            if not assigned[corner]:
                vertices_3d[corner] = placements[face].apply(pattern.vertices[corner])[0]
                assigned[corner] = True
    return FoldedState(tuple(placements[face] for face in range(len(pattern.faces))), vertices_3d, max_deviation)


def forward_force_along_path(force: DrivingForce, path: FoldPath) -> FloatArray:
    """
    Forward force at every path point: the unit finite-difference tangent of the path dotted with the force.

    Raises:
        DimensionMismatch: force and path have different crease counts
    """
    angles = path.angles
    if angles.shape[1] != force.dimension:
        raise DimensionMismatch(angles.shape[1], force.dimension)
    chords = path.chord_lengths
    if chords[-1] == 0.0:
        return np.zeros(len(angles))
    tangents = np.gradient(angles, chords, axis=0, edge_order=2 if len(angles) > 2 else 1)
    norms = np.linalg.norm(tangents, axis=1)
    norms[norms == 0.0] = 1.0
    return np.asarray((tangents / norms[:, None]) @ force.per_crease_torques)


def check_monotonicity(path: FoldPath, creases: Optional[Sequence[int]] = None) -> List[int]:
    """Creases whose folding angle magnitude shrinks somewhere along the path"""
    magnitudes = np.abs(path.angles)
    indices = range(magnitudes.shape[1]) if creases is None else creases
    violations = [int(crease) for crease in indices
                  if np.any(np.diff(magnitudes[:, crease]) < -MONOTONICITY_TOLERANCE)]
    if violations:
        logging.warning("Folding angles of creases %s are not monotone along the path", violations)
    return violations
