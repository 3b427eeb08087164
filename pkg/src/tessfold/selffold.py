"""
Unique self-foldability of a folding mode: the span test against the surrounding valid tangents, driving force
synthesis by orthogonal projection and the forward force.

The verdict is decided at the flat state. Forward force along a folded path is evaluated by
`sim.forward_force_along_path` and reported, it does not change the verdict.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from tessfold.configspace import (RANK_CUTOFF, GlobalMode, enumerate_modes, numerical_rank, surrounding_tangents,
                                  tangent_space_dim, valid_tangents_flat)
from tessfold.exceptions import (DimensionMismatch, InternalInconsistency, InvalidDrivingForce, InvalidOption,
                                 MixedVertexGeometry, NotUniquelySelfFoldable)
from tessfold.pattern import CreasePattern, PatternClass, classify_pattern, vertex_geometry
from tessfold.type_aliases import FloatArray

SPAN_THRESHOLD = 1e-8
PERPENDICULARITY_TOLERANCE = 1e-10

# Unique self-foldability of every mode for the pattern classes with a known answer
PREDICTED_VERDICTS: Dict[PatternClass, bool] = {
    PatternClass.MIURA_LIKE: False,
    PatternClass.CHICKEN_WIRE_LIKE: False,
    PatternClass.GENERIC_FLAT_FOLDABLE: True,
    PatternClass.GENERIC_NON_FLAT_FOLDABLE: True,
}


@dataclass(frozen=True, eq=False)
class DrivingForce:
    """Constant torque per crease, one additively separable component per crease axis"""
    per_crease_torques: FloatArray

    def __post_init__(self) -> None:
        torques = np.array(self.per_crease_torques, dtype=float)
        if torques.ndim != 1 or not np.all(np.isfinite(torques)) or not np.any(torques):
            raise InvalidDrivingForce()
        torques.setflags(write=False)
        object.__setattr__(self, "per_crease_torques", torques)

    @property
    def dimension(self) -> int:
        return len(self.per_crease_torques)


@dataclass(frozen=True, eq=False)
class FoldabilityVerdict:
    """
    Outcome of the self-foldability analysis of one mode.

    driving_force is set exactly when the mode is uniquely self-foldable. refusal_reason explains a negative verdict.
    """
    pattern_class: PatternClass
    mode_count: int
    target_mode: int
    uniquely_self_foldable: bool
    driving_force: Optional[DrivingForce]
    span_residual: float
    perpendicularity_residuals: Tuple[float, ...]
    forward_force: Optional[float]
    tangent_dim: int
    surrounding_dim: int
    refusal_reason: Optional[str] = None

    def __post_init__(self) -> None:
        if self.uniquely_self_foldable != (self.driving_force is not None):
            raise InternalInconsistency("a driving force must come with a positive verdict and only with it")

    @property
    def max_perpendicularity_residual(self) -> Optional[float]:
        if not self.perpendicularity_residuals:
            return None
        return max(self.perpendicularity_residuals)


def _unit(vector: Sequence[float]) -> FloatArray:
    array = np.asarray(vector, dtype=float)
    return array / np.linalg.norm(array)


def _projection(direction: FloatArray, surrounding: List[FloatArray]) -> FloatArray:
    """Orthogonal projection onto the span of the surrounding tangents"""
    matrix = np.column_stack([np.asarray(tangent, dtype=float) for tangent in surrounding])
    if matrix.shape[0] != len(direction):
        raise DimensionMismatch(len(direction), matrix.shape[0])
    left, singular_values, _ = np.linalg.svd(matrix, full_matrices=False)
    basis = left[:, singular_values > RANK_CUTOFF * singular_values[0]]
    return np.asarray(basis @ (basis.T @ direction))


def span_membership(direction: Sequence[float], surrounding: List[FloatArray]) -> Tuple[bool, float]:
    """
    Whether a folding direction lies in the linear span of the surrounding valid tangents.

    Returns:
        (in span, norm of the direction minus its projection onto the span)
    """
    unit = _unit(direction)
    if not surrounding:
        return False, float(np.linalg.norm(unit))
    residual = float(np.linalg.norm(unit - _projection(unit, surrounding)))
    return residual < SPAN_THRESHOLD, residual


def synthesize_driving_force(direction: Sequence[float], surrounding: List[FloatArray]) -> DrivingForce:
    """
    Unit driving force perpendicular to every surrounding tangent with a positive forward force along the direction.

    Raises:
        NotUniquelySelfFoldable: the direction lies in the span of the surrounding tangents
    """
    unit = _unit(direction)
    in_span, residual = span_membership(unit, surrounding)
    if in_span:
        raise NotUniquelySelfFoldable(residual)
    force = unit - _projection(unit, surrounding) if surrounding else unit.copy()
    force /= np.linalg.norm(force)
    for tangent in surrounding:
        if abs(float(force @ _unit(tangent))) >= PERPENDICULARITY_TOLERANCE:
            raise InternalInconsistency("the synthesized force is not perpendicular to a surrounding tangent")
    if float(force @ unit) <= 0.0:
        raise InternalInconsistency("the synthesized force has no forward component")
    return DrivingForce(force)


def forward_force(force: DrivingForce, tangent: Sequence[float]) -> float:
    """Dot product of a driving force with a folding direction"""
    vector = np.asarray(tangent, dtype=float)
    if vector.shape != (force.dimension,):
        raise DimensionMismatch(force.dimension, vector.size)
    return float(force.per_crease_torques @ vector)


def _surrounding_dim(surrounding: List[FloatArray]) -> int:
    if not surrounding:
        return 0
    return numerical_rank(np.column_stack(surrounding))


def _has_straight_crease_lines(pattern: CreasePattern) -> bool:
    return any(vertex_geometry(pattern, vertex).has_collinear_creases for vertex in pattern.interior_vertices)


def analyze(pattern: CreasePattern, target_mode: int = 1, modes: Optional[List[GlobalMode]] = None,
            workers: int = 1, max_vertices: int = 20) -> FoldabilityVerdict:
    """
    Full self-foldability analysis of one mode of a pattern.

    The pattern is classified, its modes enumerated (unless given), and the target mode tested against the tangents
    of all other modes. A driving force is synthesized when the target lies outside their span. For the pattern
    classes with a known answer the verdict is cross-checked against it. A non-flat-foldable pattern crossed by
    straight crease lines has a folding for every line and is reported without the cross-check.

    Args:
        pattern: the crease pattern
        target_mode: label of the mode to fold
        modes: the enumerated modes, computed when not given
        workers: threads for the exhaustive enumeration
        max_vertices: cap for the exhaustive enumeration

    Raises:
        InvalidOption: no mode carries the target label
        InternalInconsistency: the verdict contradicts the pattern class or the tangent space is too small
    """
    try:
        pattern_class = classify_pattern(pattern)
    except MixedVertexGeometry:
        pattern_class = PatternClass.UNSUPPORTED
    if modes is None:
        modes = enumerate_modes(pattern, workers=workers, max_vertices=max_vertices)
    target = next((mode for mode in modes if mode.label == target_mode), None)
    if target is None:
        raise InvalidOption(f"mode {target_mode} does not exist, the pattern has {len(modes)} modes")

    surrounding = surrounding_tangents(valid_tangents_flat(pattern, modes), target.tangent)
    in_span, residual = span_membership(target.tangent, surrounding)
    tangent_dim = tangent_space_dim(pattern)
    surrounding_dim = _surrounding_dim(surrounding)

    force: Optional[DrivingForce] = None
    perpendicularity: Tuple[float, ...] = ()
    forward: Optional[float] = None
    refusal: Optional[str] = None
    if in_span:
        refusal = str(NotUniquelySelfFoldable(residual))
    else:
        force = synthesize_driving_force(target.tangent, surrounding)
        perpendicularity = tuple(abs(float(force.per_crease_torques @ _unit(tangent))) for tangent in surrounding)
        forward = forward_force(force, target.tangent)
        if tangent_dim <= surrounding_dim:
            logging.warning("Tangent space dimension %d does not exceed the surrounding dimension %d",
                            tangent_dim, surrounding_dim)
            raise InternalInconsistency(f"a uniquely self-foldable mode needs a tangent space larger than "
                                        f"{surrounding_dim}, found {tangent_dim}")

    predicted = PREDICTED_VERDICTS.get(pattern_class)
    if pattern_class == PatternClass.GENERIC_NON_FLAT_FOLDABLE and _has_straight_crease_lines(pattern):
        logging.warning("Straight crease lines cross the %s pattern, each line folds on its own and the two-mode "
                        "prediction does not apply", pattern_class.value)
        predicted = None
    if predicted is not None and predicted == in_span:
        raise InternalInconsistency(f"span test gives {not in_span} for a {pattern_class.value} pattern, "
                                    f"expected {predicted}")
    logging.info("Mode %d of the %s pattern is %suniquely self-foldable (span residual %.3e)", target_mode,
                 pattern_class.value, "" if force is not None else "not ", residual)
    return FoldabilityVerdict(pattern_class=pattern_class, mode_count=len(modes), target_mode=target_mode,
                              uniquely_self_foldable=force is not None, driving_force=force, span_residual=residual,
                              perpendicularity_residuals=perpendicularity, forward_force=forward,
                              tangent_dim=tangent_dim, surrounding_dim=surrounding_dim, refusal_reason=refusal)
