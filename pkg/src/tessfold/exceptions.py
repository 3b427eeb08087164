"""Exceptions for tessfold"""
from typing import Optional


class TessfoldException(Exception):
    """Base exception for tessfold exceptions"""


class UsageError(TessfoldException):
    """Base for errors caused by invalid input (exit code 1)"""


class AnalysisRefusal(TessfoldException):
    """Base for analyses that ran but refuse the requested outcome (exit code 2)"""


class NumericalFailure(TessfoldException):
    """Base for solver and consistency failures (exit code 3)"""


class NonConvexTile(UsageError):
    """Raised when a tile is not a strictly convex counter-clockwise quadrilateral"""

    def __init__(self, message: str) -> None:
        super().__init__(f"Tile is not convex: {message}")


class DegenerateTile(UsageError):
    """Raised when a tile angle or side collapses to zero"""

    def __init__(self, message: str) -> None:
        super().__init__(f"Tile is degenerate: {message}")


class InvalidAngle(UsageError):
    """Raised when an angle parameter is outside its admissible range"""

    def __init__(self, name: str, value: float, admissible: str) -> None:
        super().__init__(f"Angle '{name}' = {value:.6g} rad is invalid, expected {admissible}")


class InvalidGridSize(UsageError):
    """Raised when the face grid dimensions are not usable"""

    def __init__(self, grid: str) -> None:
        super().__init__(f"Grid '{grid}' is invalid, expected ROWSxCOLS with both at least 2")


class InvalidOption(UsageError):
    """Raised when command options are missing or contradict each other"""

    def __init__(self, message: str) -> None:
        super().__init__(f"{message}")


class BoundaryVertex(UsageError):
    """Raised when an interior-vertex operation is applied to a boundary vertex"""

    def __init__(self, vertex: int) -> None:
        super().__init__(f"Vertex {vertex} is a boundary vertex")


class WrongDegree(UsageError):
    """Raised when an interior vertex does not have exactly four creases"""

    def __init__(self, vertex: int, degree: int) -> None:
        super().__init__(f"Vertex {vertex} has degree {degree}, expected 4")


class MixedVertexGeometry(UsageError):
    """Raised when interior vertices do not share one sector-angle multiset"""

    def __init__(self) -> None:
        super().__init__("Interior vertices have different sector angles, the pattern cannot be classified")


class NotFlatFoldable(UsageError):
    """Raised when a flat-foldable-only operation meets a vertex failing Kawasaki"""

    def __init__(self, message: str = "vertex fails the Kawasaki condition") -> None:
        super().__init__(f"Not flat-foldable: {message}")


class DegenerateAngles(UsageError):
    """Raised when sector angles make the folding multipliers undefined"""

    def __init__(self, message: str) -> None:
        super().__init__(f"Degenerate sector angles: {message}")


class NotRigidlyFoldable(UsageError):
    """Raised when a vertex admits no bird's foot"""

    def __init__(self, message: str) -> None:
        super().__init__(f"Vertex is not rigidly foldable: {message}")


class AngleOutOfRange(UsageError):
    """Raised when a folding angle reaches or exceeds a half turn"""

    def __init__(self, value: float) -> None:
        super().__init__(f"Folding angle {value:.6g} rad is out of range, expected |angle| < pi")


class DegenerateMultiplier(UsageError):
    """Raised when a folding multiplier vanishes where the flat-foldable enumeration needs it"""

    def __init__(self, vertex: int) -> None:
        super().__init__(f"A folding multiplier vanishes at vertex {vertex}, use the general enumeration")


class TooManyVertices(UsageError):
    """Raised when exhaustive mode enumeration would exceed the vertex cap"""

    def __init__(self, count: int, cap: int) -> None:
        super().__init__(f"Pattern has {count} interior vertices, exhaustive enumeration is capped at {cap}")


class DirectionNotValid(UsageError):
    """Raised when a direction matches none of the valid tangents"""

    def __init__(self) -> None:
        super().__init__("Direction does not match any valid tangent")


class DimensionMismatch(UsageError):
    """Raised when vectors of different lengths are combined"""

    def __init__(self, expected: int, actual: int) -> None:
        super().__init__(f"Dimension mismatch: expected {expected}, got {actual}")


class InvalidDrivingForce(UsageError):
    """Raised when a driving force is zero or not finite"""

    def __init__(self) -> None:
        super().__init__("Driving force must be finite and nonzero")


class MalformedDocument(UsageError):
    """Raised when a FOLD document is not usable"""

    def __init__(self, message: str) -> None:
        super().__init__(f"Malformed FOLD document: {message}")


class NonQuadFace(UsageError):
    """Raised when an imported pattern has a face that is not a quadrilateral"""

    def __init__(self, face: int, size: int) -> None:
        super().__init__(f"Face {face} has {size} vertices, only quadrilateral faces are supported")


class NonManifold(UsageError):
    """Raised when an imported pattern is not a quadrilateral grid"""

    def __init__(self, message: str) -> None:
        super().__init__(f"Pattern is not a quadrilateral grid: {message}")


class JsonFileNotFound(UsageError):
    """Raised when a json file is not found"""

    def __init__(self, file_name: str) -> None:
        super().__init__(f"File '{file_name}' not found")


class MalformedJsonFile(UsageError):
    """Raised when a json file could not be parsed"""

    def __init__(self, file_name: str, exception: Exception) -> None:
        super().__init__(f"The file '{file_name}' does not contain valid json. Error: {exception}")


class PackageNotComplete(UsageError):
    """Raised when a file that should be part of the package is missing"""

    def __init__(self, file_name: str) -> None:
        super().__init__(f"Package file '{file_name}' is missing, please reinstall tessfold")


class NotUniquelySelfFoldable(AnalysisRefusal):
    """Raised when the folding direction lies in the span of the surrounding valid tangents"""

    def __init__(self, residual: Optional[float] = None) -> None:
        detail = "" if residual is None else f" (span residual {residual:.3e})"
        super().__init__(f"Folding mode is not uniquely self-foldable{detail}")


class NoModes(AnalysisRefusal):
    """Raised when no folding mode exists at the flat state"""

    def __init__(self) -> None:
        super().__init__("No folding mode was found at the flat state")


class NoConvergence(NumericalFailure):
    """Raised when Newton iteration does not reach the closure tolerance"""

    def __init__(self, residual: float, iterations: int) -> None:
        super().__init__(f"Newton iteration did not converge: residual {residual:.3e} after {iterations} iterations")


class BranchExhausted(NumericalFailure):
    """Raised when continuation cannot advance along a folding branch"""

    def __init__(self, angle: float) -> None:
        super().__init__(f"Folding branch could not be continued beyond {angle:.6g} rad")


class RankDeficiencyAmbiguous(NumericalFailure):
    """Raised when singular values fall too close to the rank cutoff"""

    def __init__(self, singular_value: float, cutoff: float) -> None:
        super().__init__(f"Numerical rank is ambiguous: singular value {singular_value:.3e} near cutoff "
                         f"{cutoff:.3e}")


class InternalInconsistency(NumericalFailure):
    """Raised when two independent checks of the same fact disagree"""

    def __init__(self, message: str) -> None:
        super().__init__(f"Internal inconsistency: {message}")


class InconsistentPropagation(NumericalFailure):
    """Raised when a folding angle derived twice does not agree"""

    def __init__(self, message: str) -> None:
        super().__init__(f"Fold propagation is inconsistent: {message}")


class InconsistentPlacement(NumericalFailure):
    """Raised when two placement paths for the same face disagree"""

    def __init__(self, face: int, deviation: float) -> None:
        super().__init__(f"Face {face} placement is inconsistent, deviation {deviation:.3e}")
