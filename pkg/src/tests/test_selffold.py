import math
import unittest
from unittest.mock import patch

import numpy as np
from numpy.testing import assert_allclose

from tessfold.configspace import enumerate_modes
from tessfold.exceptions import (DimensionMismatch, InternalInconsistency, InvalidDrivingForce, InvalidOption,
                                 NotUniquelySelfFoldable)
from tessfold.pattern import PatternClass, QuadTile, generate_chicken_wire, generate_miura, \
    generate_rotationally_symmetric
from tessfold.selffold import (DrivingForce, FoldabilityVerdict, analyze, forward_force, span_membership,
                               synthesize_driving_force)


def rotational(*degrees: float):
    return generate_rotationally_symmetric(QuadTile.from_angles(np.radians(degrees)), 3, 3)


class TestDrivingForce(unittest.TestCase):

    def test_valid(self):
        force = DrivingForce([0.0, 0.6, 0.8])
        self.assertEqual(force.dimension, 3)
        self.assertAlmostEqual(forward_force(force, [0.0, 1.0, 0.0]), 0.6)
        self.assertRaises(DimensionMismatch, forward_force, force, [1.0, 0.0])

    def test_invalid(self):
        self.assertRaises(InvalidDrivingForce, DrivingForce, [0.0, 0.0])
        self.assertRaises(InvalidDrivingForce, DrivingForce, [1.0, math.nan])
        self.assertRaises(InvalidDrivingForce, DrivingForce, [[1.0, 0.0]])

    def test_verdict_needs_force_exactly_when_unique(self):
        self.assertRaises(InternalInconsistency, FoldabilityVerdict, PatternClass.MIURA_LIKE, 1, 1, True, None, 1.0,
                          (), None, 2, 0)


class TestSpan(unittest.TestCase):

    def setUp(self) -> None:
        self.surrounding = [np.array([1.0, 0.0, 0.0]), np.array([-1.0, 0.0, 0.0])]

    def test_span_membership(self):
        in_span, residual = span_membership([3.0, 0.0, 0.0], self.surrounding)
        self.assertTrue(in_span)
        self.assertLess(residual, 1e-12)
        in_span, residual = span_membership([1.0, 1.0, 0.0], self.surrounding)
        self.assertFalse(in_span)
        self.assertAlmostEqual(residual, math.sqrt(0.5))
        self.assertEqual(span_membership([0.0, 2.0, 0.0], []), (False, 1.0))
        self.assertRaises(DimensionMismatch, span_membership, [1.0, 0.0], self.surrounding)

    def test_synthesize(self):
        force = synthesize_driving_force([1.0, 1.0, 0.0], self.surrounding)
        assert_allclose(force.per_crease_torques, [0.0, 1.0, 0.0], atol=1e-15)
        self.assertGreater(forward_force(force, [1.0, 1.0, 0.0]), 0.0)
        lonely = synthesize_driving_force([0.0, 0.0, -2.0], [])
        assert_allclose(lonely.per_crease_torques, [0.0, 0.0, -1.0])
        self.assertRaises(NotUniquelySelfFoldable, synthesize_driving_force, [-1.0, 0.0, 0.0], self.surrounding)


class TestAnalyze(unittest.TestCase):

    def test_miura_is_not_uniquely_self_foldable(self):
        pattern = generate_miura(math.radians(60), 1.0, 1.0, 3, 3)
        verdict = analyze(pattern, 1)
        self.assertEqual(verdict.pattern_class, PatternClass.MIURA_LIKE)
        self.assertGreaterEqual(verdict.mode_count, 5)
        self.assertFalse(verdict.uniquely_self_foldable)
        self.assertIsNone(verdict.driving_force)
        self.assertIsNone(verdict.forward_force)
        self.assertIsNone(verdict.max_perpendicularity_residual)
        self.assertLess(verdict.span_residual, 1e-8)
        self.assertEqual((verdict.tangent_dim, verdict.surrounding_dim), (4, 4))
        self.assertIn("not uniquely self-foldable", verdict.refusal_reason)

    def test_chicken_wire_is_not_uniquely_self_foldable(self):
        pattern = generate_chicken_wire(math.radians(60), 2.0, 1.0, 3, 3)
        verdict = analyze(pattern, 1)
        self.assertEqual(verdict.pattern_class, PatternClass.CHICKEN_WIRE_LIKE)
        self.assertFalse(verdict.uniquely_self_foldable)

    def test_generic_flat_foldable(self):
        pattern = rotational(50, 110, 130, 70)
        modes = enumerate_modes(pattern)
        self.assertEqual(len(modes), 2)
        for mode in modes:
            with self.assertLogs(level="INFO") as logs:
                verdict = analyze(pattern, mode.label, modes=modes)
            self.assertTrue(any("uniquely self-foldable" in message for message in logs.output))
            self.assertEqual(verdict.pattern_class, PatternClass.GENERIC_FLAT_FOLDABLE)
            self.assertTrue(verdict.uniquely_self_foldable)
            self.assertIsNone(verdict.refusal_reason)
            torques = verdict.driving_force.per_crease_torques
            self.assertAlmostEqual(float(np.linalg.norm(torques)), 1.0)
            self.assertGreater(verdict.forward_force, 0.0)
            self.assertLess(verdict.max_perpendicularity_residual, 1e-10)
            self.assertEqual(len(verdict.perpendicularity_residuals), 2)
            self.assertEqual((verdict.tangent_dim, verdict.surrounding_dim), (4, 1))
            other = next(item for item in modes if item.label != mode.label)
            self.assertAlmostEqual(float(torques @ other.tangent), 0.0, places=10)

    def test_generic_non_flat_foldable(self):
        pattern = rotational(45, 80, 115, 120)
        verdict = analyze(pattern, 1)
        self.assertEqual(verdict.pattern_class, PatternClass.GENERIC_NON_FLAT_FOLDABLE)
        self.assertEqual(verdict.mode_count, 2)
        self.assertTrue(verdict.uniquely_self_foldable)
        self.assertGreater(verdict.forward_force, 0.0)
        self.assertLess(verdict.max_perpendicularity_residual, 1e-10)
        self.assertEqual((verdict.tangent_dim, verdict.surrounding_dim), (4, 1))

    def test_both_modes_share_the_verdict(self):
        for angles in ((50, 110, 130, 70), (45, 80, 115, 120)):
            pattern = rotational(*angles)
            modes = enumerate_modes(pattern)
            verdicts = [analyze(pattern, mode.label, modes=modes) for mode in modes]
            self.assertEqual([verdict.uniquely_self_foldable for verdict in verdicts], [True, True], angles)
            self.assertEqual(verdicts[0].surrounding_dim, verdicts[1].surrounding_dim)

    def test_straight_crease_lines(self):
        # 50 + 130 = 180, the tile is a trapezoid
        pattern = rotational(50, 60, 120, 130)
        with self.assertLogs(level="WARNING") as logs:
            verdict = analyze(pattern, 1)
        self.assertTrue(any("Straight crease lines" in message for message in logs.output))
        self.assertEqual(verdict.pattern_class, PatternClass.GENERIC_NON_FLAT_FOLDABLE)
        self.assertGreater(verdict.mode_count, 2)
        self.assertFalse(verdict.uniquely_self_foldable)
        self.assertIsNotNone(verdict.refusal_reason)

    def test_verdict_does_not_depend_on_scale(self):
        for angles in ((50, 110, 130, 70), (45, 80, 115, 120)):
            pattern = rotational(*angles)
            verdict = analyze(pattern, 1)
            scaled = analyze(pattern.scaled(3.7), 1)
            self.assertEqual(scaled.uniquely_self_foldable, verdict.uniquely_self_foldable)
            self.assertEqual(scaled.mode_count, verdict.mode_count)
            self.assertAlmostEqual(scaled.forward_force, verdict.forward_force, places=8)
            assert_allclose(scaled.driving_force.per_crease_torques, verdict.driving_force.per_crease_torques,
                            atol=1e-8)
        miura = generate_miura(math.radians(60), 1.0, 1.0, 3, 3)
        self.assertFalse(analyze(miura.scaled(0.25), 1).uniquely_self_foldable)

    def test_missing_mode(self):
        self.assertRaises(InvalidOption, analyze, rotational(50, 110, 130, 70), 3)

    def test_prediction_cross_check(self):
        pattern = rotational(50, 110, 130, 70)
        with patch.dict("tessfold.selffold.PREDICTED_VERDICTS", {PatternClass.GENERIC_FLAT_FOLDABLE: False}):
            self.assertRaises(InternalInconsistency, analyze, pattern, 1)

    def test_small_tangent_space(self):
        pattern = rotational(50, 110, 130, 70)
        with patch("tessfold.selffold.tangent_space_dim", return_value=1), \
             self.assertLogs(level="WARNING") as logs:
            self.assertRaises(InternalInconsistency, analyze, pattern, 1)
        self.assertIn("does not exceed", logs.output[0])
