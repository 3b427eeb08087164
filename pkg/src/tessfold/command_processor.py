import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from tessfold.configspace import GlobalMode, enumerate_modes
from tessfold.decorators import log_function
from tessfold.exceptions import InternalInconsistency, InvalidOption, MixedVertexGeometry, NotUniquelySelfFoldable
from tessfold.generators.fold_generator import FoldGenerator
from tessfold.generators.report_generator import AnalysisReport, ForceTraceReport, ReportGenerator, dump_report
from tessfold.generators.svg_generator import SvgGenerator
from tessfold.parsers.fold_parser import import_fold
from tessfold.pattern import (CreasePattern, PatternClass, QuadTile, classify_pattern, generate_chicken_wire,
                              generate_miura, generate_rotationally_symmetric)
from tessfold.selffold import FoldabilityVerdict, analyze
from tessfold.settings import Settings
from tessfold.sim import (FoldPath, check_monotonicity, fold_path, forward_force_along_path, global_closure_residual,
                          propagate_fold, reconstruct_3d)
from tessfold.type_aliases import FoldDocumentType, TableType
from tessfold.utils import parse_angles, parse_grid, read_json_file, write_file, write_json_file
from tessfold.validators import validate_json_schema

MIURA_SIDE_LENGTHS = (1.0, 1.0)
CHICKEN_WIRE_SIDE_LENGTHS = (2.0, 1.0)
ALL_MODES = "all"


@dataclass(frozen=True)
class SimulationResult:
    path: FoldPath
    verdict: FoldabilityVerdict
    forward_forces: Optional[List[float]]
    closure_residuals: List[float]
    max_placement_deviation: float
    non_monotone_creases: List[int]


class CommandProcessor:
    """
    Turns command line options into library calls and returns plain results for printing.

    Args:
        settings: the global settings
    """
    def __init__(self, settings: Settings):
        self.__settings = settings

    @log_function
    def load_pattern(self, grid: str, tile: Optional[str] = None, miura: Optional[float] = None,
                     chicken_wire: Optional[float] = None, fold: Optional[Path] = None) -> CreasePattern:
        """
        Build the pattern from exactly one source option.

        Args:
            grid: face grid 'ROWSxCOLS', not used for imported patterns
            tile: four comma separated tile angles in degrees
            miura: Miura-ori parallelogram angle in degrees
            chicken_wire: Chicken Wire trapezoid base angle in degrees
            fold: FOLD file to import

        Raises:
            InvalidOption: not exactly one source is given or the tile does not have four angles
        """
        sources = [source for source in (tile, miura, chicken_wire, fold) if source is not None]
        if len(sources) != 1:
            raise InvalidOption("give exactly one of --tile, --miura, --chicken-wire or --fold")
        if fold is not None:
            return import_fold(read_json_file(fold))
        rows, cols = parse_grid(grid)
        if tile is not None:
            angles = parse_angles(tile)
            if len(angles) != 4:
                raise InvalidOption(f"--tile needs four angles, got {len(angles)}")
            return generate_rotationally_symmetric(QuadTile.from_angles(angles), rows, cols)
        if miura is not None:
            return generate_miura(math.radians(miura), *MIURA_SIDE_LENGTHS, rows, cols)
        assert chicken_wire is not None
        return generate_chicken_wire(math.radians(chicken_wire), *CHICKEN_WIRE_SIDE_LENGTHS, rows, cols)

    @staticmethod
    def pattern_class(pattern: CreasePattern) -> PatternClass:
        try:
            return classify_pattern(pattern)
        except MixedVertexGeometry:
            return PatternClass.UNSUPPORTED

    @log_function
    def modes(self, pattern: CreasePattern) -> List[GlobalMode]:
        return enumerate_modes(pattern, workers=self.__settings.workers,
                               max_vertices=self.__settings.max_enumeration_vertices)

    @staticmethod
    def parse_mode(mode: str, default_all: bool) -> Optional[int]:
        """
        Mode label from the --mode option, None for all modes.

        Raises:
            InvalidOption: the value is neither a positive label nor 'all'
        """
        if mode.lower() == ALL_MODES:
            if not default_all:
                raise InvalidOption("this command folds a single mode, give its label")
            return None
        try:
            label = int(mode)
        except ValueError:
            raise InvalidOption(f"--mode must be a mode label or '{ALL_MODES}', not '{mode}'") from None
        if label < 1:
            raise InvalidOption(f"mode labels start at 1, got {label}")
        return label

    @staticmethod
    def select_mode(modes: List[GlobalMode], label: int) -> GlobalMode:
        mode = next((item for item in modes if item.label == label), None)
        if mode is None:
            raise InvalidOption(f"mode {label} does not exist, the pattern has {len(modes)} modes")
        return mode

    @log_function
    def verdicts(self, pattern: CreasePattern, modes: List[GlobalMode], label: Optional[int],
                 require_unique: bool = False) -> List[FoldabilityVerdict]:
        """
        Self-foldability verdicts for one mode or all modes.

        Raises:
            NotUniquelySelfFoldable: require_unique is set and a verdict is negative
        """
        labels = [mode.label for mode in modes] if label is None else [self.select_mode(modes, label).label]
        verdicts = [analyze(pattern, target, modes=modes) for target in labels]
        if require_unique:
            refused = next((verdict for verdict in verdicts if not verdict.uniquely_self_foldable), None)
            if refused is not None:
                raise NotUniquelySelfFoldable(refused.span_residual)
        return verdicts

    @log_function
    def analyze(self, pattern: CreasePattern, mode: Optional[int], driver: float, steps: int,
                require_unique: bool = False, out: Optional[Path] = None) -> AnalysisReport:
        """
        Full analysis report, with the forward force range along a fold path for every uniquely self-foldable mode.

        Args:
            pattern: the pattern
            mode: label of the mode to analyze, None for all
            driver: largest seed crease angle of the fold paths in degrees
            steps: number of fold path points
            require_unique: refuse when a mode is not uniquely self-foldable
            out: file to write the report JSON to

        Raises:
            InternalInconsistency: the report does not pass schema validation
        """
        modes = self.modes(pattern)
        verdicts = self.verdicts(pattern, modes, mode, require_unique)
        traces = {}
        for verdict in verdicts:
            if verdict.driving_force is None:
                continue
            path = fold_path(pattern, self.select_mode(modes, verdict.target_mode), math.radians(driver), steps)
            forces = forward_force_along_path(verdict.driving_force, path)
            traces[verdict.target_mode] = ForceTraceReport(driver_max_deg=driver, steps=steps,
                                                           minimum=float(np.min(forces)),
                                                           maximum=float(np.max(forces)))
        report = ReportGenerator.generate(pattern, self.pattern_class(pattern), modes, verdicts,
                                          self.__settings.tolerance, traces)
        data = dump_report(report)
        valid, message = validate_json_schema(data, "report.json")
        if not valid:
            raise InternalInconsistency(f"the analysis report fails its schema: {message}")
        if out is not None:
            write_json_file(out, data)
        return report

    @log_function
    def simulate(self, pattern: CreasePattern, mode: int, driver: float, steps: int) -> SimulationResult:
        """
        Fold a mode to the driver angle and check every point of the path.

        Args:
            pattern: the pattern
            mode: label of the mode
            driver: largest seed crease angle in degrees
            steps: number of path points
        """
        modes = self.modes(pattern)
        selected = self.select_mode(modes, mode)
        verdict = analyze(pattern, mode, modes=modes)
        path = fold_path(pattern, selected, math.radians(driver), steps)
        forces = None
        if verdict.driving_force is not None:
            forces = [float(value) for value in forward_force_along_path(verdict.driving_force, path)]
        residuals = [global_closure_residual(pattern, point) for point in path.points]
        deviation = max(reconstruct_3d(pattern, point).max_deviation for point in path.points)
        return SimulationResult(path, verdict, forces, residuals, deviation, check_monotonicity(path))

    @staticmethod
    def simulation_table(result: SimulationResult) -> TableType:
        table: TableType = []
        for index, (point, driver, chord) in enumerate(zip(result.path.points, result.path.driver_values,
                                                           result.path.chord_lengths)):
            row = {"step": index, "driver": round(math.degrees(driver), 6), "chord": round(float(chord), 9),
                   "closure": f"{result.closure_residuals[index]:.2e}",
                   "max angle": round(math.degrees(float(np.max(np.abs(point.folding_angles)))), 6)}
            if result.forward_forces is not None:
                row["forward force"] = round(result.forward_forces[index], 9)
            table.append(row)
        return table

    @log_function
    def export(self, pattern: CreasePattern, out: Path, mode: Optional[int] = None,
               driver: Optional[float] = None) -> Union[FoldDocumentType, str]:
        """
        Write the pattern to a FOLD or SVG file, chosen by the file suffix.

        Args:
            pattern: the pattern
            out: destination, '.svg' selects SVG and anything else FOLD
            mode: mode whose mountain-valley assignment is drawn, or that is folded when a driver is given
            driver: seed crease angle in degrees of a folded FOLD export

        Raises:
            InvalidOption: a folded state is requested as SVG or without a mode
        """
        selected = self.select_mode(self.modes(pattern), mode) if mode is not None else None
        if out.suffix.lower() == ".svg":
            if driver is not None:
                raise InvalidOption("SVG export draws the flat crease pattern, leave out --driver")
            document = SvgGenerator.generate(pattern, selected)
            write_file(out, document)
            return document
        if driver is not None:
            if selected is None:
                raise InvalidOption("a folded export needs a mode")
            fold = FoldGenerator.generate(pattern, propagate_fold(pattern, selected, math.radians(driver)))
        else:
            fold = FoldGenerator.generate(pattern, mode=selected)
        write_json_file(out, fold)
        return fold
