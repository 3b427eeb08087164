"""
Rigid folding of a single degree-4 vertex.

Creases are numbered 0..3 counter-clockwise, sector k lies between crease k and crease k + 1. A folding angle is
positive for a valley and negative for a mountain.
"""
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import null_space
from scipy.spatial.transform import Rotation

from tessfold.exceptions import (AngleOutOfRange, BranchExhausted, DegenerateAngles, InternalInconsistency,
                                 NoConvergence, NotFlatFoldable, NotRigidlyFoldable)
from tessfold.type_aliases import FloatArray

ANGLE_TOLERANCE = 1e-9
NEWTON_TOLERANCE = 1e-12
CLOSURE_REPORT_TOLERANCE = 1e-10
MAX_NEWTON_ITERATIONS = 50
CONTINUATION_STEP = math.radians(2.0)
MAX_CONSECUTIVE_FAILURES = 3

MOUNTAIN = "M"
VALLEY = "V"
UNFOLDED = "F"


@dataclass(frozen=True, eq=False)
class VertexGeometry:
    """Sector angles around an interior degree-4 vertex, counter-clockwise starting after crease 0"""
    sector_angles: FloatArray

    def __post_init__(self) -> None:
        angles = np.array(self.sector_angles, dtype=float)
        if angles.shape != (4,) or not np.all(np.isfinite(angles)):
            raise DegenerateAngles("a degree-4 vertex has four finite sector angles")
        if np.min(angles) <= ANGLE_TOLERANCE:
            raise DegenerateAngles("sector angles must be positive")
        if abs(float(np.sum(angles)) - 2 * math.pi) > 1e3 * ANGLE_TOLERANCE:
            raise DegenerateAngles(f"sector angles sum to {math.degrees(float(np.sum(angles))):.9g} degrees")
        angles.setflags(write=False)
        object.__setattr__(self, "sector_angles", angles)

    @classmethod
    def from_degrees(cls, *angles: float) -> "VertexGeometry":
        return cls(np.radians(angles))

    @cached_property
    def crease_angles(self) -> FloatArray:
        """Direction of crease k, measured from crease 0"""
        return np.concatenate([[0.0], np.cumsum(self.sector_angles[:3])])

    @cached_property
    def crease_directions(self) -> FloatArray:
        return np.column_stack([np.cos(self.crease_angles), np.sin(self.crease_angles)])

    @property
    def flat_foldable(self) -> bool:
        angles = self.sector_angles
        return bool(abs(angles[0] + angles[2] - math.pi) <= ANGLE_TOLERANCE)

    @property
    def doubly_degenerate(self) -> bool:
        """Both pairs of opposite creases are collinear"""
        angles = self.sector_angles
        return bool(abs(angles[0] + angles[1] - math.pi) <= ANGLE_TOLERANCE
                    and abs(angles[1] + angles[2] - math.pi) <= ANGLE_TOLERANCE)

    @property
    def has_collinear_creases(self) -> bool:
        """At least one pair of opposite creases forms a straight line through the vertex"""
        return any(abs(self.bordering_sum(crease) - math.pi) <= ANGLE_TOLERANCE for crease in range(4))

    def bordering_sum(self, crease: int) -> float:
        """Sum of the two sector angles on either side of a crease"""
        return float(self.sector_angles[crease - 1] + self.sector_angles[crease])


def _signs(mv: Sequence[Union[float, str]]) -> List[int]:
    signs = []
    for value in mv:
        if isinstance(value, str):
            signs.append({VALLEY: 1, MOUNTAIN: -1}.get(value.upper(), 0))
        else:
            signs.append(int(np.sign(value)))
    return signs


def mv_letter(value: float, tolerance: float = 0.0) -> str:
    if value > tolerance:
        return VALLEY
    if value < -tolerance:
        return MOUNTAIN
    return UNFOLDED


@dataclass(frozen=True, eq=False)
class LocalMode:
    """
    One folding mode of a vertex at the flat state.

    multipliers are the first-order folding speeds of creases 0..3, scaled so the fastest crease has magnitude 1 and
    the majority of the creases fold as valleys. different_crease is the crease with the minority sign, None for a
    degenerate mode in which a collinear pair folds alone.
    """
    multipliers: FloatArray
    different_crease: Optional[int]
    label: int = 0

    @classmethod
    def from_multipliers(cls, multipliers: Sequence[float], label: int = 0) -> "LocalMode":
        values = np.array(multipliers, dtype=float)
        scale = float(np.max(np.abs(values)))
        if values.shape != (4,) or scale == 0.0 or not math.isfinite(scale):
            raise InternalInconsistency("a local mode needs four finite multipliers, not all zero")
        values = values / scale
        values[np.abs(values) < ANGLE_TOLERANCE] = 0.0
        positive = int(np.sum(values > 0))
        negative = int(np.sum(values < 0))
        if negative > positive or (negative == positive and values[np.flatnonzero(values)[0]] < 0):
            values = -values
            positive, negative = negative, positive
        values = values + 0.0
        different: Optional[int] = None
        if positive == 3 and negative == 1:
            different = int(np.flatnonzero(values < 0)[0])
        values.setflags(write=False)
        return cls(values, different, label)

    @property
    def degenerate(self) -> bool:
        return bool(np.any(self.multipliers == 0.0))

    @property
    def mv(self) -> List[str]:
        return [mv_letter(value) for value in self.multipliers]

    def with_label(self, label: int) -> "LocalMode":
        return LocalMode(self.multipliers, self.different_crease, label)


def folding_multipliers(alpha: float, beta: float) -> Tuple[float, float]:
    """
    Folding multipliers of a flat-foldable vertex with consecutive sector angles alpha and beta.

    Returns:
        (p, q) where p relates the folding speeds in the mode with alternating creases 0 and 2 equal, q the mode with
        creases 1 and 3 equal. q is exactly 0 for a mirror symmetric vertex (alpha == beta).

    Raises:
        DegenerateAngles: the multipliers are undefined for these angles
    """
    half_sum = 0.5 * (alpha + beta)
    half_difference = 0.5 * (alpha - beta)
    if not 0.0 < alpha < math.pi or not 0.0 < beta < math.pi:
        raise DegenerateAngles(f"sector angles {math.degrees(alpha):.6g} and {math.degrees(beta):.6g} degrees "
                               "must lie strictly between 0 and 180")
    if abs(math.sin(half_sum)) <= ANGLE_TOLERANCE or abs(math.cos(half_difference)) <= ANGLE_TOLERANCE:
        raise DegenerateAngles("the multiplier denominators vanish")
    p = math.cos(half_sum) / math.cos(half_difference)
    q = -math.sin(half_difference) / math.sin(half_sum) + 0.0
    return p, q


def vertex_multipliers(geometry: VertexGeometry) -> Tuple[float, float]:
    """(p, q) of a flat-foldable vertex, read from sector angles 0 and 1"""
    if not geometry.flat_foldable:
        raise NotFlatFoldable()
    return folding_multipliers(float(geometry.sector_angles[0]), float(geometry.sector_angles[1]))


def check_maekawa(mv: Sequence[Union[float, str]]) -> bool:
    """Mountain and valley counts of a degree-4 vertex differ by two"""
    signs = _signs(mv)
    if len(signs) != 4 or 0 in signs:
        return False
    return abs(signs.count(1) - signs.count(-1)) == 2


def birds_foot_check(geometry: VertexGeometry, mv: Sequence[Union[float, str]]) -> bool:
    """
    True when a mountain-valley assignment makes the vertex a bird's foot: three creases of one parity, the different
    crease bordered by two sectors summing to less than 180 degrees and no sector of 180 degrees or more.
    """
    signs = _signs(mv)
    if not check_maekawa(signs):
        return False
    if np.max(geometry.sector_angles) >= math.pi - ANGLE_TOLERANCE:
        return False
    minority = 1 if signs.count(1) == 1 else -1
    different = signs.index(minority)
    return geometry.bordering_sum(different) < math.pi - ANGLE_TOLERANCE


def _second_order_form(geometry: VertexGeometry) -> FloatArray:
    # z component of the second order closure term, sum over i < j of m_i m_j sin(phi_j - phi_i)
    phi = geometry.crease_angles
    upper = 0.5 * np.sin(phi[None, :] - phi[:, None])
    upper = np.triu(upper, k=1)
    return np.asarray(upper + upper.T)


def tangent_directions(geometry: VertexGeometry) -> List[FloatArray]:
    """
    The two flat-state folding directions of a vertex: first-order kernel directions on which the second-order closure
    condition vanishes.

    Raises:
        NotRigidlyFoldable: the second-order condition has no real solution
    """
    kernel = null_space(geometry.crease_directions.T)
    if kernel.shape[1] != 2:
        raise NotRigidlyFoldable(f"first-order kernel has dimension {kernel.shape[1]}")
    reduced = kernel.T @ _second_order_form(geometry) @ kernel
    eigenvalues, eigenvectors = np.linalg.eigh(0.5 * (reduced + reduced.T))
    scale = max(abs(eigenvalues[0]), abs(eigenvalues[1]), 1.0)
    if eigenvalues[0] >= -ANGLE_TOLERANCE * scale or eigenvalues[1] <= ANGLE_TOLERANCE * scale:
        raise NotRigidlyFoldable("no real folding direction leaves the flat state")
    ratio = math.sqrt(-eigenvalues[0] / eigenvalues[1])
    directions = []
    for sign in (1.0, -1.0):
        direction = kernel @ eigenvectors @ np.array([1.0, sign * ratio])
        directions.append(direction / np.linalg.norm(direction))
    return directions


def local_modes(geometry: VertexGeometry, crease_indices: Optional[Sequence[int]] = None) -> List[LocalMode]:
    """
    The two folding modes of a rigidly foldable vertex.

    Modes are labelled 1 and 2: a non-degenerate mode comes before a degenerate one, otherwise the mode whose different
    crease has the lower index comes first. With ``crease_indices`` the global crease indices decide.

    Raises:
        NotRigidlyFoldable: a sector angle is 180 degrees or more, no crease is bordered by a pair of sectors below
            180 degrees, or both opposite crease pairs are collinear
    """
    angles = geometry.sector_angles
    if np.max(angles) >= math.pi - ANGLE_TOLERANCE:
        raise NotRigidlyFoldable("a sector angle is 180 degrees or more")
    if geometry.doubly_degenerate:
        raise NotRigidlyFoldable("both pairs of opposite creases are collinear")
    if not any(geometry.bordering_sum(crease) < math.pi - ANGLE_TOLERANCE for crease in range(4)):
        raise NotRigidlyFoldable("no crease can be the different crease")

    if geometry.flat_foldable:
        p, q = vertex_multipliers(geometry)
        candidates = [np.array([1.0, -p, 1.0, p]), np.array([-q, 1.0, q, 1.0])]
    else:
        candidates = tangent_directions(geometry)
    modes = [LocalMode.from_multipliers(candidate) for candidate in candidates]

    def order(mode: LocalMode) -> Tuple[bool, int]:
        if mode.different_crease is None:
            return True, 0
        crease = mode.different_crease
        return False, crease_indices[crease] if crease_indices is not None else crease

    modes.sort(key=order)
    for mode in modes:
        if not mode.degenerate and not birds_foot_check(geometry, mode.multipliers):
            raise InternalInconsistency(f"local mode {mode.mv} is not a bird's foot")
    return [mode.with_label(label) for label, mode in enumerate(modes, start=1)]


def _rotation_x(angle: float) -> FloatArray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def _rotation_z(angle: float) -> FloatArray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _closure(geometry: VertexGeometry, rho: Sequence[float]) -> Tuple[FloatArray, FloatArray]:
    """Loop rotation and the world axes of the four creases along the loop"""
    product = np.eye(3)
    axes = []
    for fold, sector in zip(rho, geometry.sector_angles):
        axes.append(product[:, 0].copy())
        product = product @ _rotation_x(float(fold)) @ _rotation_z(float(sector))
    return product, np.column_stack(axes)


def vertex_closure_residual(geometry: VertexGeometry, rho: Sequence[float]) -> float:
    """Frobenius distance of the loop rotation around the vertex from the identity"""
    product, _ = _closure(geometry, rho)
    return float(np.linalg.norm(product - np.eye(3)))


def closure_rotvec(geometry: VertexGeometry, rho: Sequence[float]) -> Tuple[FloatArray, FloatArray]:
    """Rotation vector of the loop rotation and its Jacobian with respect to the four folding angles"""
    product, axes = _closure(geometry, rho)
    return Rotation.from_matrix(product).as_rotvec(), axes


def _solve_closure(geometry: VertexGeometry, guess: FloatArray,
                   driver: int) -> Tuple[Optional[FloatArray], float, int]:
    free = [crease for crease in range(4) if crease != driver]
    rho = guess.copy()
    residual = math.inf
    for iteration in range(1, MAX_NEWTON_ITERATIONS + 1):
        rotvec, jacobian = closure_rotvec(geometry, rho)
        residual = float(np.linalg.norm(rotvec))
        if residual < NEWTON_TOLERANCE:
            return rho, residual, iteration
        step = np.linalg.lstsq(jacobian[:, free], -rotvec, rcond=None)[0]
        rho[free] += step
        if not np.all(np.isfinite(rho)) or np.max(np.abs(rho)) >= math.pi:
            return None, residual, iteration
    rotvec, _ = closure_rotvec(geometry, rho)
    residual = float(np.linalg.norm(rotvec))
    if residual < CLOSURE_REPORT_TOLERANCE:
        return rho, residual, MAX_NEWTON_ITERATIONS
    return None, residual, MAX_NEWTON_ITERATIONS


def transfer_flat_foldable(multiplier: float, rho_in: float) -> float:
    """
    Folding angle of a crease whose tan-half angle is ``multiplier`` times that of the input crease.

    Raises:
        AngleOutOfRange: |rho_in| >= pi
    """
    if not abs(rho_in) < math.pi:
        raise AngleOutOfRange(rho_in)
    return 2.0 * math.atan(multiplier * math.tan(0.5 * rho_in))


def flat_foldable_angles(mode: LocalMode, rho_in: float, driver: int) -> FloatArray:
    """All four folding angles of a flat-foldable vertex in a mode, the driver crease at rho_in"""
    ratios = mode.multipliers / mode.multipliers[driver]
    return np.array([transfer_flat_foldable(float(ratio), rho_in) for ratio in ratios])


def transfer_general(geometry: VertexGeometry, mode: LocalMode, rho_in: float,
                     driver: Optional[int] = None) -> FloatArray:
    """
    Folding angles of any rigidly foldable vertex along a mode branch, by Newton iteration on the loop closure with
    continuation from the flat state.

    Args:
        geometry: the vertex
        mode: the branch to follow
        rho_in: folding angle of the driver crease
        driver: crease held at rho_in, by default the first crease with the largest multiplier

    Returns:
        The four folding angles, the driver crease included

    Raises:
        AngleOutOfRange: |rho_in| >= pi
        NoConvergence: Newton iteration fails on the first step away from the flat state
        BranchExhausted: continuation cannot advance, a fold limit of the mechanism is reached
    """
    if not abs(rho_in) < math.pi:
        raise AngleOutOfRange(rho_in)
    multipliers = mode.multipliers
    if driver is None:
        driver = int(np.argmax(np.abs(multipliers)))
    if multipliers[driver] == 0.0:
        raise DegenerateAngles(f"crease {driver} does not fold in this mode")
    ratios = multipliers / multipliers[driver]
    current = np.zeros(4)
    if rho_in == 0.0:
        return current

    direction = math.copysign(1.0, rho_in)
    step = CONTINUATION_STEP
    reached = 0.0
    previous: Optional[Tuple[float, FloatArray]] = None
    failures = 0
    residual, iterations = 0.0, 0
    while reached != rho_in:
        target = reached + direction * step
        if direction * (target - rho_in) > 0:
            target = rho_in
        if previous is None:
            guess = ratios * target
        else:
            last_angle, last_point = previous
            guess = current + (current - last_point) * (target - reached) / (reached - last_angle)
        guess[driver] = target
        solution, residual, iterations = _solve_closure(geometry, guess, driver)
        if solution is None:
            failures += 1
            step *= 0.5
            logging.debug("Continuation step to %.6g rad failed, residual %.3e", target, residual)
            if failures >= MAX_CONSECUTIVE_FAILURES:
                if reached == 0.0:
                    raise NoConvergence(residual, iterations)
                raise BranchExhausted(reached)
            continue
        previous = (reached, current)
        reached, current = target, solution
        failures = 0
        step = min(2.0 * step, CONTINUATION_STEP)
    logging.debug("Vertex closed at %.6g rad with residual %.3e after %d iterations", rho_in, residual, iterations)
    return current
