import math
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from tessfold.configspace import (ANGULAR_MATCH_TOLERANCE, ENUMERATION_DRIVER, GlobalMode, RANK_CUTOFF,
                                  tangent_space_dim)
from tessfold.exceptions import DegenerateTile, NonConvexTile
from tessfold.pattern import ANGLE_TOLERANCE, CreasePattern, PatternClass, tile_angles
from tessfold.selffold import SPAN_THRESHOLD, FoldabilityVerdict
from tessfold.sim import PLACEMENT_TOLERANCE, PROPAGATION_TOLERANCE
from tessfold.type_aliases import ReportType
from tessfold.utils import round_all, round_significant
from tessfold.version import __version__
from tessfold.vertex import CLOSURE_REPORT_TOLERANCE, CONTINUATION_STEP, NEWTON_TOLERANCE

TOOL_NAME = "tessfold"


class PatternReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: str
    pattern_class: str
    tile_angles_deg: Optional[List[float]]
    grid: Tuple[int, int]
    vertex_count: int
    interior_vertex_count: int
    crease_count: int
    tangent_dim: int


class ModeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: int
    vertex_modes: List[int]
    mv: str
    tangent: List[float]

    @field_validator("tangent")
    @classmethod
    def round_tangent(cls, value: List[float]) -> List[float]:
        return round_all(value)


class ForceTraceReport(BaseModel):
    """Range of the forward force along a sampled fold path"""
    model_config = ConfigDict(frozen=True)

    driver_max_deg: float
    steps: int
    minimum: float
    maximum: float


class VerdictReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    target_mode: int
    uniquely_self_foldable: bool
    span_residual: float
    perpendicularity_residual: Optional[float] = None
    forward_force: Optional[float] = None
    driving_force: Optional[List[float]]
    tangent_dim: int
    surrounding_dim: int
    refusal_reason: Optional[str] = None
    forward_force_trace: Optional[ForceTraceReport] = None

    @field_validator("driving_force")
    @classmethod
    def round_force(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        return round_all(value) if value is not None else None


class AnalysisReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    tool: str = TOOL_NAME
    version: str = __version__
    pattern: PatternReport
    modes: List[ModeReport]
    mode_count: int
    verdicts: List[VerdictReport]
    uniquely_self_foldable: bool
    tolerances: Dict[str, float]


def solver_tolerances(report_tolerance: float) -> Dict[str, float]:
    """Every tolerance that an analysis depends on, keyed by name"""
    return {
        "report": report_tolerance,
        "angle": ANGLE_TOLERANCE,
        "rank_cutoff": RANK_CUTOFF,
        "span_threshold": SPAN_THRESHOLD,
        "newton": NEWTON_TOLERANCE,
        "closure_report": CLOSURE_REPORT_TOLERANCE,
        "continuation_step_deg": math.degrees(CONTINUATION_STEP),
        "enumeration_driver_deg": math.degrees(ENUMERATION_DRIVER),
        "angular_match": ANGULAR_MATCH_TOLERANCE,
        "placement": PLACEMENT_TOLERANCE,
        "propagation": PROPAGATION_TOLERANCE,
    }


class ReportGenerator:
    @staticmethod
    def pattern_report(pattern: CreasePattern, pattern_class: PatternClass) -> PatternReport:
        try:
            angles: Optional[List[float]] = round_all(math.degrees(angle) for angle in tile_angles(pattern))
        except (NonConvexTile, DegenerateTile):
            angles = None
        return PatternReport(kind=pattern.kind, pattern_class=pattern_class.value, tile_angles_deg=angles,
                             grid=(pattern.rows, pattern.cols), vertex_count=len(pattern.vertices),
                             interior_vertex_count=len(pattern.interior_vertices),
                             crease_count=pattern.crease_count, tangent_dim=tangent_space_dim(pattern))

    @staticmethod
    def mode_report(mode: GlobalMode) -> ModeReport:
        return ModeReport(label=mode.label, vertex_modes=list(mode.vertex_modes), mv="".join(mode.mv_assignment),
                          tangent=[float(value) for value in mode.tangent])

    @staticmethod
    def verdict_report(verdict: FoldabilityVerdict,
                       forward_force_trace: Optional[ForceTraceReport] = None) -> VerdictReport:
        force = verdict.driving_force
        return VerdictReport(
            target_mode=verdict.target_mode,
            uniquely_self_foldable=verdict.uniquely_self_foldable,
            span_residual=round_significant(verdict.span_residual),
            perpendicularity_residual=verdict.max_perpendicularity_residual,
            forward_force=round_significant(verdict.forward_force) if verdict.forward_force is not None else None,
            driving_force=[float(value) for value in force.per_crease_torques] if force is not None else None,
            tangent_dim=verdict.tangent_dim,
            surrounding_dim=verdict.surrounding_dim,
            refusal_reason=verdict.refusal_reason,
            forward_force_trace=forward_force_trace)

    @staticmethod
    def generate(pattern: CreasePattern, pattern_class: PatternClass, modes: List[GlobalMode],
                 verdicts: List[FoldabilityVerdict], report_tolerance: float,
                 traces: Optional[Dict[int, ForceTraceReport]] = None) -> AnalysisReport:
        """
        Collect the analysis of a pattern in one report.

        Args:
            pattern: the analyzed pattern
            pattern_class: its class
            modes: all enumerated modes
            verdicts: verdicts of the analyzed modes
            report_tolerance: the configured report tolerance
            traces: forward force summaries along fold paths, keyed by mode label
        """
        traces = traces or {}
        return AnalysisReport(
            pattern=ReportGenerator.pattern_report(pattern, pattern_class),
            modes=[ReportGenerator.mode_report(mode) for mode in modes],
            mode_count=len(modes),
            verdicts=[ReportGenerator.verdict_report(verdict, traces.get(verdict.target_mode))
                      for verdict in verdicts],
            uniquely_self_foldable=bool(verdicts) and all(verdict.uniquely_self_foldable for verdict in verdicts),
            tolerances=solver_tolerances(report_tolerance))


def dump_report(report: AnalysisReport) -> ReportType:
    return report.model_dump(mode="json")


def load_report(data: Any) -> AnalysisReport:
    """Rebuild a report from its JSON form"""
    return AnalysisReport.model_validate(data)
