import json
import math
import unittest

import numpy as np
from pydantic import ValidationError

from tessfold.configspace import enumerate_modes
from tessfold.generators.report_generator import (TOOL_NAME, ForceTraceReport, ReportGenerator, dump_report,
                                                  load_report, solver_tolerances)
from tessfold.pattern import CreasePattern, PatternClass, QuadTile, classify_pattern, generate_miura, \
    generate_rotationally_symmetric
from tessfold.selffold import analyze
from tessfold.validators import validate_json_schema
from tessfold.version import __version__


class TestReportGenerator(unittest.TestCase):

    def setUp(self) -> None:
        tile = QuadTile.from_angles(np.radians([50, 110, 130, 70]))
        self.pattern = generate_rotationally_symmetric(tile, 3, 3)
        self.modes = enumerate_modes(self.pattern)
        self.verdicts = [analyze(self.pattern, mode.label, modes=self.modes) for mode in self.modes]

    def test_generate(self):
        trace = ForceTraceReport(driver_max_deg=30.0, steps=5, minimum=0.1, maximum=0.2)
        report = ReportGenerator.generate(self.pattern, PatternClass.GENERIC_FLAT_FOLDABLE, self.modes,
                                          self.verdicts, 1e-9, {1: trace})
        self.assertEqual(report.tool, TOOL_NAME)
        self.assertEqual(report.version, __version__)
        self.assertEqual(report.mode_count, 2)
        self.assertTrue(report.uniquely_self_foldable)
        self.assertEqual(report.pattern.grid, (3, 3))
        self.assertEqual(report.pattern.tangent_dim, 4)
        self.assertEqual(report.pattern.pattern_class, "GenericFlatFoldable")
        np.testing.assert_allclose(report.pattern.tile_angles_deg, [50, 110, 130, 70], atol=1e-9)
        self.assertEqual(report.verdicts[0].forward_force_trace, trace)
        self.assertIsNone(report.verdicts[1].forward_force_trace)
        self.assertEqual(report.tolerances["report"], 1e-9)

        data = dump_report(report)
        self.assertEqual(validate_json_schema(data, "report.json"), (True, None))
        json.dumps(data)
        self.assertEqual(load_report(data), report)

    def test_negative_verdict(self):
        miura = generate_miura(math.radians(60), 1.0, 1.0, 3, 3)
        modes = enumerate_modes(miura)
        verdict = analyze(miura, 1, modes=modes)
        report = ReportGenerator.generate(miura, classify_pattern(miura), modes, [verdict], 1e-9)
        self.assertFalse(report.uniquely_self_foldable)
        self.assertIsNone(report.verdicts[0].driving_force)
        self.assertIn("not uniquely", report.verdicts[0].refusal_reason)
        self.assertEqual(validate_json_schema(dump_report(report), "report.json"), (True, None))

    def test_no_verdicts(self):
        report = ReportGenerator.generate(self.pattern, PatternClass.GENERIC_FLAT_FOLDABLE, self.modes, [], 1e-9)
        self.assertFalse(report.uniquely_self_foldable)

    def test_mode_report(self):
        mode_report = ReportGenerator.mode_report(self.modes[0])
        self.assertEqual(mode_report.label, 1)
        self.assertEqual(len(mode_report.mv), self.pattern.crease_count)
        self.assertEqual(len(mode_report.tangent), self.pattern.crease_count)

    def test_pattern_without_a_convex_face(self):
        vertices = self.pattern.vertices.copy()
        vertices[[0, 1]] = vertices[[1, 0]]
        twisted = CreasePattern(vertices, 3, 3)
        self.assertIsNone(ReportGenerator.pattern_report(twisted, PatternClass.UNSUPPORTED).tile_angles_deg)

    def test_reports_are_frozen(self):
        report = ReportGenerator.mode_report(self.modes[0])
        self.assertRaises(ValidationError, setattr, report, "label", 3)

    def test_solver_tolerances(self):
        tolerances = solver_tolerances(1e-6)
        self.assertEqual(tolerances["report"], 1e-6)
        self.assertTrue(all(value > 0 for value in tolerances.values()))
