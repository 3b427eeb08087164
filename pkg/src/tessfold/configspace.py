"""
Configuration space of a crease pattern at the flat state: first-order constraints, tangent-space dimension and the
global folding modes.
"""
import logging
import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space, qr

from tessfold.exceptions import (DegenerateMultiplier, DirectionNotValid, DimensionMismatch, InternalInconsistency,
                                 InvalidOption, NoModes, NotFlatFoldable, RankDeficiencyAmbiguous, TooManyVertices)
from tessfold.pattern import (CreasePattern, crease_directions, interior_face_creases, interior_faces,
                              vertex_creases, vertex_geometry)
from tessfold.type_aliases import FloatArray, LoopProductsType, MVAssignmentType, VertexModesType
from tessfold.vertex import (CLOSURE_REPORT_TOLERANCE, MAX_NEWTON_ITERATIONS, NEWTON_TOLERANCE, LocalMode,
                             VertexGeometry, closure_rotvec, local_modes, mv_letter)

RANK_CUTOFF = 1e-9
RANK_AMBIGUITY_FACTOR = 10.0
KERNEL_TOLERANCE = 1e-10
LOOP_PRODUCT_TOLERANCE = 1e-9
PROPAGATION_TOLERANCE = 1e-9
ANGULAR_MATCH_TOLERANCE = 1e-6
ENUMERATION_DRIVER = math.radians(5.0)
ENUMERATION_STEPS = 3
SIGN_THRESHOLD = 1e-6
MAX_ENUMERATION_VERTICES = 20


@dataclass(frozen=True, eq=False)
class GlobalMode:
    """
    A folding branch of the whole pattern through the flat state.

    vertex_modes holds the local mode label of every interior vertex, 0 for a vertex that stays flat to first order.
    tangent is the unit flat-state folding direction, its first nonzero component positive.
    """
    vertex_modes: VertexModesType
    tangent: FloatArray
    label: int = 0

    def __post_init__(self) -> None:
        tangent = np.array(self.tangent, dtype=float)
        tangent.setflags(write=False)
        object.__setattr__(self, "tangent", tangent)
        object.__setattr__(self, "vertex_modes", tuple(int(label) for label in self.vertex_modes))

    @property
    def mv_assignment(self) -> MVAssignmentType:
        return [mv_letter(value) for value in self.tangent]

    def with_label(self, label: int) -> "GlobalMode":
        return GlobalMode(self.vertex_modes, self.tangent, label)


def normalize_tangent(vector: Sequence[float]) -> FloatArray:
    """Unit vector with tiny components cleared and the first nonzero component positive"""
    tangent = np.array(vector, dtype=float)
    scale = float(np.max(np.abs(tangent))) if tangent.size else 0.0
    if scale == 0.0:
        raise InternalInconsistency("a folding direction cannot be the zero vector")
    tangent[np.abs(tangent) < RANK_CUTOFF * scale] = 0.0
    tangent /= np.linalg.norm(tangent)
    if tangent[np.flatnonzero(tangent)[0]] < 0:
        tangent = -tangent
    return tangent + 0.0


def angular_distance(first: Sequence[float], second: Sequence[float]) -> float:
    """Angle between two unit vectors, computed from their chord for accuracy at small angles"""
    chord = float(np.linalg.norm(np.asarray(first) - np.asarray(second)))
    return 2.0 * math.asin(min(1.0, 0.5 * chord))


def flat_constraint_matrix(pattern: CreasePattern) -> FloatArray:
    """
    First-order constraints at the flat state: for every interior vertex the folding speeds weight the unit crease
    directions to a zero sum, one row for x and one for y.
    """
    interior = pattern.interior_vertices
    matrix = np.zeros((2 * len(interior), pattern.crease_count))
    for row, vertex in enumerate(interior):
        for crease, direction in zip(vertex_creases(pattern, vertex), crease_directions(pattern, vertex)):
            matrix[2 * row:2 * row + 2, crease] += direction
    return matrix


def numerical_rank(matrix: FloatArray) -> int:
    """
    SVD rank with the cutoff relative to the largest singular value.

    Raises:
        RankDeficiencyAmbiguous: a singular value lies within a factor of ten of the cutoff
    """
    if matrix.size == 0:
        return 0
    singular_values = np.linalg.svd(matrix, compute_uv=False)
    largest = float(singular_values[0])
    if largest == 0.0:
        return 0
    cutoff = RANK_CUTOFF * largest
    for value in singular_values:
        if cutoff / RANK_AMBIGUITY_FACTOR < value < cutoff * RANK_AMBIGUITY_FACTOR:
            raise RankDeficiencyAmbiguous(float(value), cutoff)
    return int(np.sum(singular_values > cutoff))


def tangent_space_dim(pattern: CreasePattern) -> int:
    """Dimension of the flat-state tangent space, the kernel of the flat constraint matrix"""
    dimension = pattern.crease_count - numerical_rank(flat_constraint_matrix(pattern))
    logging.debug("Tangent space of the %dx%d pattern has dimension %d", pattern.rows, pattern.cols, dimension)
    return dimension


def _vertex_modes(pattern: CreasePattern) -> List[List[LocalMode]]:
    return [local_modes(vertex_geometry(pattern, vertex), vertex_creases(pattern, vertex))
            for vertex in pattern.interior_vertices]


def _local_index(pattern: CreasePattern, vertex: int, crease: int) -> int:
    return vertex_creases(pattern, vertex).index(crease)


def face_loop_products(pattern: CreasePattern, face: int,
                       modes: Optional[List[List[LocalMode]]] = None) -> LoopProductsType:
    """
    Product of the folding multiplier ratios around an interior face for all 16 choices of local modes at its corners.

    Keys are the local mode labels of the four face corners in counter-clockwise order. A choice is first-order
    consistent when its product is 1.

    Raises:
        DegenerateMultiplier: a corner has a mode in which a crease does not fold
    """
    if modes is None:
        modes = _vertex_modes(pattern)
    position = {vertex: index for index, vertex in enumerate(pattern.interior_vertices)}
    creases = interior_face_creases(pattern, face)
    corners = pattern.faces[face]
    ratios = []
    for corner_index, corner in enumerate(corners):
        incoming, outgoing = creases[corner_index - 1], creases[corner_index]
        corner_ratios = []
        for mode in modes[position[corner]]:
            below = mode.multipliers[_local_index(pattern, corner, incoming)]
            if below == 0.0 or mode.multipliers[_local_index(pattern, corner, outgoing)] == 0.0:
                raise DegenerateMultiplier(corner)
            corner_ratios.append(mode.multipliers[_local_index(pattern, corner, outgoing)] / below)
        ratios.append(corner_ratios)
    products: LoopProductsType = {}
    for choice in np.ndindex(2, 2, 2, 2):
        labels = (choice[0] + 1, choice[1] + 1, choice[2] + 1, choice[3] + 1)
        products[labels] = float(np.prod([ratios[corner][option] for corner, option in enumerate(choice)]))
    return products


def assignment_is_consistent(pattern: CreasePattern, vertex_modes: Sequence[int],
                             modes: Optional[List[List[LocalMode]]] = None) -> bool:
    """True when the loop product around every interior face is 1 for a per-vertex choice of mode labels"""
    if len(vertex_modes) != len(pattern.interior_vertices):
        raise DimensionMismatch(len(pattern.interior_vertices), len(vertex_modes))
    if modes is None:
        modes = _vertex_modes(pattern)
    label_of = dict(zip(pattern.interior_vertices, vertex_modes))
    for face in interior_faces(pattern):
        products = face_loop_products(pattern, face, modes)
        key = (label_of[pattern.faces[face][0]], label_of[pattern.faces[face][1]],
               label_of[pattern.faces[face][2]], label_of[pattern.faces[face][3]])
        if abs(products[key] - 1.0) > LOOP_PRODUCT_TOLERANCE:
            return False
    return True


def _tangent_from_scales(pattern: CreasePattern, multipliers: List[FloatArray], scales: Sequence[float]) -> FloatArray:
    tangent = np.zeros(pattern.crease_count)
    for vertex, local, scale in zip(pattern.interior_vertices, multipliers, scales):
        for crease, value in zip(vertex_creases(pattern, vertex), local):
            if tangent[crease] == 0.0:
                tangent[crease] = scale * value
    return tangent


def _propagate_from_seed(pattern: CreasePattern, multipliers: List[FloatArray]) -> Optional[FloatArray]:
    """Spread the seed crease speed through the interior vertices, None when a crease is reached inconsistently"""
    position = {vertex: index for index, vertex in enumerate(pattern.interior_vertices)}
    speeds: Dict[int, float] = {0: 1.0}
    scales: List[Optional[float]] = [None] * len(position)
    start = next(vertex for vertex in pattern.creases[0] if vertex in position)
    scales[position[start]] = 1.0 / multipliers[position[start]][_local_index(pattern, start, 0)]
    queue = deque([start])
    while queue:
        vertex = queue.popleft()
        scale = scales[position[vertex]]
        assert scale is not None
        for local, crease in enumerate(vertex_creases(pattern, vertex)):
            speed = scale * multipliers[position[vertex]][local]
            known = speeds.get(crease)
            if known is not None and abs(known - speed) > PROPAGATION_TOLERANCE * max(1.0, abs(known)):
                return None
            speeds[crease] = speed
            for neighbor in pattern.creases[crease]:
                if neighbor in position and scales[position[neighbor]] is None:
                    scales[position[neighbor]] = speed / multipliers[position[neighbor]][
                        _local_index(pattern, neighbor, crease)]
                    queue.append(neighbor)
    return _tangent_from_scales(pattern, multipliers, [scale or 0.0 for scale in scales])


def _search_order(pattern: CreasePattern) -> List[int]:
    """
    Interior vertices with the first two interior columns taken row by row, then the others column by column. Every
    vertex outside the first interior row and column comes after the other three corners of the face to its
    upper left.
    """
    def key(vertex: int) -> Tuple[int, int, int]:
        row, col = pattern.grid_position(vertex)
        return max(col, 2), row, col

    return sorted(pattern.interior_vertices, key=key)


def _consistent_assignments(pattern: CreasePattern, modes: List[List[LocalMode]]) -> List[Tuple[int, ...]]:
    """
    Depth-first search for the local mode labels whose loop products are 1 around every interior face.

    A face is checked as soon as its last corner in the search order gets a label, so a wrong choice is dropped one
    step after it is made.
    """
    order = _search_order(pattern)
    rank = {vertex: index for index, vertex in enumerate(order)}
    products = {face: face_loop_products(pattern, face, modes) for face in interior_faces(pattern)}
    closing: Dict[int, List[int]] = {vertex: [] for vertex in order}
    for face in products:
        closing[max(pattern.faces[face], key=rank.__getitem__)].append(face)

    def closes(partial: Tuple[int, ...], vertex: int) -> bool:
        for face in closing[vertex]:
            key = tuple(partial[rank[corner]] for corner in pattern.faces[face])
            if abs(products[face][key] - 1.0) > LOOP_PRODUCT_TOLERANCE:
                return False
        return True

    complete = []
    pruned = 0
    stack: List[Tuple[int, ...]] = [()]
    while stack:
        partial = stack.pop()
        if len(partial) == len(order):
            complete.append(tuple(partial[rank[vertex]] for vertex in pattern.interior_vertices))
            continue
        vertex = order[len(partial)]
        for label in (2, 1):
            candidate = partial + (label,)
            if closes(candidate, vertex):
                stack.append(candidate)
            else:
                pruned += 1
    logging.debug("Mode search kept %d assignments and pruned %d partial ones", len(complete), pruned)
    # bitmask order, the first interior vertex in the lowest bit
    return sorted(complete, key=lambda labels: labels[::-1])


def enumerate_modes_flat_foldable(pattern: CreasePattern) -> List[GlobalMode]:
    """
    Global modes of a pattern with flat-foldable, non-degenerate vertices: every assignment of local modes whose loop
    products are 1 around all interior faces, with the folding speeds spread from crease 0.

    The assignments are found by a pruned depth-first search, so the work grows with the number of vertices and the
    number of surviving assignments rather than with every possible assignment.

    Raises:
        NotFlatFoldable: an interior vertex fails Kawasaki
        DegenerateMultiplier: a folding multiplier vanishes at some vertex
        NoModes: no assignment survives
    """
    for vertex in pattern.interior_vertices:
        if not vertex_geometry(pattern, vertex).flat_foldable:
            raise NotFlatFoldable(f"vertex {vertex} fails the Kawasaki condition")
    modes = _vertex_modes(pattern)
    for vertex, vertex_options in zip(pattern.interior_vertices, modes):
        if any(mode.degenerate for mode in vertex_options):
            raise DegenerateMultiplier(vertex)

    found: List[GlobalMode] = []
    for labels in _consistent_assignments(pattern, modes):
        multipliers = [modes[index][label - 1].multipliers for index, label in enumerate(labels)]
        tangent = _propagate_from_seed(pattern, multipliers)
        if tangent is None:
            raise InternalInconsistency(f"assignment {labels} passes the loop products but does not propagate")
        found.append(GlobalMode(labels, normalize_tangent(tangent), len(found) + 1))
    if not found:
        raise NoModes()
    logging.debug("Flat-foldable enumeration found %d modes", len(found))
    return found


def _scale_nullspace(pattern: CreasePattern, multipliers: List[FloatArray]) -> FloatArray:
    """Per-vertex scales that make the local folding speeds agree on every crease shared by two interior vertices"""
    position = {vertex: index for index, vertex in enumerate(pattern.interior_vertices)}
    rows = []
    for crease, (start, end) in enumerate(pattern.creases):
        if start not in position or end not in position:
            continue
        first = multipliers[position[start]][_local_index(pattern, start, crease)]
        second = multipliers[position[end]][_local_index(pattern, end, crease)]
        if first == 0.0 and second == 0.0:
            continue
        row = np.zeros(len(position))
        row[position[start]] = first
        row[position[end]] = -second
        rows.append(row)
    if not rows:
        return np.eye(len(position))
    return np.asarray(null_space(np.array(rows), rcond=RANK_CUTOFF))


def _canonical_basis(kernel: FloatArray) -> FloatArray:
    """Kernel basis in which every vector has a pivot vertex scaled to 1 where the others vanish"""
    if kernel.shape[1] == 0:
        return kernel
    _, _, pivots = qr(kernel.T, pivoting=True)
    basis = kernel @ np.linalg.inv(kernel[pivots[:kernel.shape[1]], :])
    basis[np.abs(basis) < RANK_CUTOFF] = 0.0
    return np.asarray(basis)


def _vertex_system(pattern: CreasePattern) -> Tuple[List[VertexGeometry], List[Tuple[int, int, int, int]]]:
    return ([vertex_geometry(pattern, vertex) for vertex in pattern.interior_vertices],
            [vertex_creases(pattern, vertex) for vertex in pattern.interior_vertices])


def pattern_closure(geometries: List[VertexGeometry], creases: List[Tuple[int, int, int, int]],
                    rho: FloatArray) -> Tuple[FloatArray, FloatArray]:
    """Stacked loop-closure rotation vectors of all interior vertices and their Jacobian"""
    residual = np.zeros(3 * len(geometries))
    jacobian = np.zeros((3 * len(geometries), len(rho)))
    for index, (geometry, local) in enumerate(zip(geometries, creases)):
        rotvec, axes = closure_rotvec(geometry, rho[list(local)])
        residual[3 * index:3 * index + 3] = rotvec
        jacobian[3 * index:3 * index + 3, list(local)] += axes
    return residual, jacobian


def _folds_finitely(geometries: List[VertexGeometry], creases: List[Tuple[int, int, int, int]],
                    tangent: FloatArray) -> bool:
    """
    Follow a candidate direction to a small finite fold and check that the crease signs survive.

    The largest crease drives the fold forward, so a direction whose largest component is negative is followed along
    its antipode, which is the same branch.
    """
    unit = np.asarray(tangent, dtype=float) / np.linalg.norm(tangent)
    driver = int(np.argmax(np.abs(unit)))
    ratios = unit / unit[driver]
    rho = np.zeros(len(tangent))
    previous_target = 0.0
    for step in range(1, ENUMERATION_STEPS + 1):
        target = ENUMERATION_DRIVER * step / ENUMERATION_STEPS
        rho = ratios * target if step == 1 else rho * (target / previous_target)
        previous_target = target
        residual = math.inf
        for _ in range(MAX_NEWTON_ITERATIONS):
            closure, jacobian = pattern_closure(geometries, creases, rho)
            augmented = np.append(closure, rho[driver] - target)
            residual = float(np.linalg.norm(augmented))
            if residual < NEWTON_TOLERANCE:
                break
            driver_row = np.zeros((1, len(rho)))
            driver_row[0, driver] = 1.0
            rho += np.linalg.lstsq(np.vstack([jacobian, driver_row]), -augmented, rcond=None)[0]
            if not np.all(np.isfinite(rho)) or np.max(np.abs(rho)) >= math.pi:
                return False
        else:
            closure, _ = pattern_closure(geometries, creases, rho)
            residual = float(np.linalg.norm(np.append(closure, rho[driver] - target)))
        if residual >= CLOSURE_REPORT_TOLERANCE:
            return False
    folding = np.abs(unit) > SIGN_THRESHOLD
    return bool(np.all(np.sign(rho[folding]) == np.sign(ratios[folding])))


def _assignment_branches(pattern: CreasePattern, modes: List[List[LocalMode]], mask: int,
                         constraints: FloatArray) -> List[GlobalMode]:
    count = len(modes)
    labels = [((mask >> index) & 1) + 1 for index in range(count)]
    multipliers = [modes[index][label - 1].multipliers for index, label in enumerate(labels)]
    basis = _canonical_basis(_scale_nullspace(pattern, multipliers))
    geometries, creases = _vertex_system(pattern)
    branches = []
    for column in basis.T:
        tangent = _tangent_from_scales(pattern, multipliers, column)
        if not np.any(tangent):
            continue
        tangent = normalize_tangent(tangent)
        if np.linalg.norm(constraints @ tangent) >= KERNEL_TOLERANCE:
            continue
        if not _folds_finitely(geometries, creases, tangent):
            logging.debug("Assignment %s gives a direction that does not fold finitely", labels)
            continue
        vertex_modes = tuple(label if abs(scale) > RANK_CUTOFF else 0 for label, scale in zip(labels, column))
        branches.append(GlobalMode(vertex_modes, tangent))
    return branches


def _is_known(tangent: FloatArray, known: List[GlobalMode]) -> bool:
    return any(min(angular_distance(tangent, mode.tangent), angular_distance(tangent, -mode.tangent))
               < ANGULAR_MATCH_TOLERANCE for mode in known)


def enumerate_modes_general(pattern: CreasePattern, workers: int = 1,
                            max_vertices: int = MAX_ENUMERATION_VERTICES) -> List[GlobalMode]:
    """
    Exhaustive enumeration of the folding branches through the flat state.

    Every assignment of local modes (degenerate ones included) gives candidate directions from the per-vertex scales
    that agree on shared creases. A candidate becomes a branch when the closure equations of the whole pattern can be
    followed to a 5 degree fold without changing any crease sign. Duplicate directions are merged in assignment order.

    Args:
        pattern: the crease pattern
        workers: number of threads for the assignment trials
        max_vertices: cap on the number of interior vertices

    Raises:
        TooManyVertices: more interior vertices than the cap
        NoModes: no branch was found
    """
    count = len(pattern.interior_vertices)
    if count > max_vertices:
        raise TooManyVertices(count, max_vertices)
    modes = _vertex_modes(pattern)
    constraints = flat_constraint_matrix(pattern)

    def trial(mask: int) -> List[GlobalMode]:
        return _assignment_branches(pattern, modes, mask, constraints)

    masks = range(2 ** count)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(trial, masks))
    else:
        results = [trial(mask) for mask in masks]

    found: List[GlobalMode] = []
    for branches in results:
        for branch in branches:
            if not _is_known(branch.tangent, found):
                found.append(branch.with_label(len(found) + 1))
    if not found:
        raise NoModes()
    logging.debug("General enumeration found %d branches over %d assignments", len(found), len(masks))
    return found


def enumerate_modes(pattern: CreasePattern, workers: int = 1,
                    max_vertices: int = MAX_ENUMERATION_VERTICES) -> List[GlobalMode]:
    """Flat-foldable enumeration where it applies, the exhaustive enumeration otherwise"""
    try:
        return enumerate_modes_flat_foldable(pattern)
    except (NotFlatFoldable, DegenerateMultiplier) as exception:
        logging.debug("Falling back to the exhaustive enumeration: %s", exception)
        return enumerate_modes_general(pattern, workers=workers, max_vertices=max_vertices)


def valid_tangents_flat(pattern: CreasePattern, modes: Optional[List[GlobalMode]] = None) -> List[FloatArray]:
    """Unit folding directions at the flat state, an antipodal pair per mode"""
    if modes is None:
        modes = enumerate_modes(pattern)
    tangents = []
    for mode in modes:
        if len(mode.tangent) != pattern.crease_count:
            raise DimensionMismatch(pattern.crease_count, len(mode.tangent))
        tangents.extend([np.array(mode.tangent), -np.array(mode.tangent)])
    return tangents


def surrounding_tangents(valid: List[FloatArray], direction: Sequence[float]) -> List[FloatArray]:
    """
    The valid tangents outside the antipodal pair that contains the direction.

    Raises:
        DirectionNotValid: neither the direction nor its antipode is a valid tangent
    """
    unit = np.asarray(direction, dtype=float)
    unit = unit / np.linalg.norm(unit)
    matched = next((tangent for tangent in valid
                    if angular_distance(tangent / np.linalg.norm(tangent), unit) < ANGULAR_MATCH_TOLERANCE), None)
    if matched is None:
        raise DirectionNotValid()
    matched = matched / np.linalg.norm(matched)
    surrounding = []
    for tangent in valid:
        candidate = tangent / np.linalg.norm(tangent)
        if min(angular_distance(candidate, matched), angular_distance(candidate, -matched)) >= ANGULAR_MATCH_TOLERANCE:
            surrounding.append(tangent)
    return surrounding


def miura_tangent_basis(pattern: CreasePattern) -> Tuple[List[FloatArray], List[FloatArray]]:
    """
    Tangent basis of a pattern with straight crease lines in one direction and zig-zags in the other.

    Returns:
        (line vectors, zig-zag vectors): a line vector folds one straight crease line and nothing else (indicator
        vector). A zig-zag vector folds one zig-zag in its non-degenerate mode while every other vertex folds along
        its straight line only, scaled so its first zig-zag crease has speed 1.

    Raises:
        InvalidOption: the vertices have no degenerate mode
    """
    modes = _vertex_modes(pattern)
    degenerate = [mode for mode in modes[0] if mode.degenerate]
    if not degenerate:
        raise InvalidOption("a straight line and zig-zag basis needs a Miura-like or Chicken-Wire-like pattern")
    rows_straight = degenerate[0].multipliers[0] != 0.0

    line_vectors = []
    if rows_straight:
        lines = [[pattern.horizontal_crease(row, col) for col in range(pattern.cols)] for row in range(1, pattern.rows)]
    else:
        lines = [[pattern.vertical_crease(row, col) for row in range(pattern.rows)] for col in range(1, pattern.cols)]
    for line in lines:
        vector = np.zeros(pattern.crease_count)
        vector[line] = 1.0
        line_vectors.append(vector)

    zigzag_vectors = []
    zigzag_count = pattern.cols - 1 if rows_straight else pattern.rows - 1
    for zigzag in range(1, zigzag_count + 1):
        multipliers = []
        for vertex, options in zip(pattern.interior_vertices, modes):
            row, col = pattern.grid_position(vertex)
            on_zigzag = (col if rows_straight else row) == zigzag
            chosen = next(mode for mode in options if mode.degenerate != on_zigzag)
            multipliers.append(chosen.multipliers)
        kernel = _scale_nullspace(pattern, multipliers)
        if kernel.shape[1] != 1:
            raise InternalInconsistency(f"zig-zag {zigzag} has {kernel.shape[1]} independent foldings")
        vector = _tangent_from_scales(pattern, multipliers, kernel[:, 0])
        first = pattern.vertical_crease(0, zigzag) if rows_straight else pattern.horizontal_crease(zigzag, 0)
        zigzag_vectors.append(vector / vector[first])
    return line_vectors, zigzag_vectors


def decompose(vector: Sequence[float], basis: Sequence[Sequence[float]]) -> Tuple[FloatArray, float]:
    """Least-squares coefficients of a vector over a basis and the norm of what is left over"""
    target = np.asarray(vector, dtype=float)
    matrix = np.column_stack([np.asarray(item, dtype=float) for item in basis])
    if matrix.shape[0] != len(target):
        raise DimensionMismatch(matrix.shape[0], len(target))
    coefficients = np.linalg.lstsq(matrix, target, rcond=None)[0]
    return coefficients, float(np.linalg.norm(matrix @ coefficients - target))
