import math
import unittest

import numpy as np
from numpy.testing import assert_allclose

from tessfold.exceptions import (AngleOutOfRange, DegenerateAngles, InternalInconsistency, NotFlatFoldable,
                                 NotRigidlyFoldable)
from tessfold.vertex import (LocalMode, VertexGeometry, birds_foot_check, check_maekawa, flat_foldable_angles,
                             folding_multipliers, local_modes, mv_letter, tangent_directions, transfer_flat_foldable,
                             transfer_general, vertex_closure_residual, vertex_multipliers)

FLAT_FOLDABLE_VERTICES = [(50, 110, 130, 70), (40, 80, 140, 100), (70, 95, 110, 85), (30, 100, 150, 80),
                          (85, 120, 95, 60)]


class TestVertexGeometry(unittest.TestCase):

    def test_properties(self):
        geometry = VertexGeometry.from_degrees(50, 110, 130, 70)
        self.assertTrue(geometry.flat_foldable)
        self.assertFalse(geometry.doubly_degenerate)
        assert_allclose(np.degrees(geometry.crease_angles), [0, 50, 160, 290])
        self.assertAlmostEqual(math.degrees(geometry.bordering_sum(0)), 120)
        self.assertFalse(VertexGeometry.from_degrees(50, 60, 120, 130).flat_foldable)
        self.assertTrue(VertexGeometry.from_degrees(90, 90, 90, 90).doubly_degenerate)

    def test_collinear_creases(self):
        self.assertTrue(VertexGeometry.from_degrees(50, 60, 120, 130).has_collinear_creases)
        self.assertTrue(VertexGeometry.from_degrees(60, 120, 120, 60).has_collinear_creases)
        self.assertFalse(VertexGeometry.from_degrees(45, 80, 115, 120).has_collinear_creases)
        self.assertFalse(VertexGeometry.from_degrees(50, 110, 130, 70).has_collinear_creases)

    def test_invalid(self):
        self.assertRaises(DegenerateAngles, VertexGeometry.from_degrees, 90, 90, 90, 80)
        self.assertRaises(DegenerateAngles, VertexGeometry.from_degrees, 0, 120, 120, 120)
        self.assertRaises(DegenerateAngles, VertexGeometry.from_degrees, 180, 180)


class TestMultipliers(unittest.TestCase):

    def test_folding_multipliers(self):
        p, q = folding_multipliers(math.radians(50), math.radians(110))
        self.assertAlmostEqual(p, math.cos(math.radians(80)) / math.cos(math.radians(30)))
        self.assertAlmostEqual(q, 0.5 / math.sin(math.radians(80)))

    def test_mirror_symmetric(self):
        p, q = folding_multipliers(math.radians(60), math.radians(60))
        self.assertAlmostEqual(p, 0.5)
        self.assertEqual(q, 0.0)

    def test_degenerate(self):
        self.assertRaises(DegenerateAngles, folding_multipliers, 0.0, 1.0)
        self.assertRaises(DegenerateAngles, folding_multipliers, 1.0, math.pi)
        self.assertRaises(NotFlatFoldable, vertex_multipliers, VertexGeometry.from_degrees(50, 60, 120, 130))


class TestMountainValley(unittest.TestCase):

    def test_mv_letter(self):
        self.assertEqual(mv_letter(0.1), "V")
        self.assertEqual(mv_letter(-0.1), "M")
        self.assertEqual(mv_letter(0.0), "F")
        self.assertEqual(mv_letter(1e-12, tolerance=1e-9), "F")

    def test_maekawa(self):
        self.assertTrue(check_maekawa("MVVV"))
        self.assertTrue(check_maekawa([1.0, -0.5, -1.0, -0.5]))
        self.assertFalse(check_maekawa("MMVV"))
        self.assertFalse(check_maekawa("MVV0"))
        self.assertFalse(check_maekawa("VVV"))

    def test_birds_foot(self):
        geometry = VertexGeometry.from_degrees(60, 60, 120, 120)
        self.assertTrue(birds_foot_check(geometry, "VMVV"))
        self.assertTrue(birds_foot_check(geometry, "MVMM"))
        self.assertFalse(birds_foot_check(geometry, "VVVM"))
        self.assertFalse(birds_foot_check(geometry, "MVMV"))


class TestLocalModes(unittest.TestCase):

    def test_from_multipliers(self):
        mode = LocalMode.from_multipliers([-2.0, 1.0, -2.0, -1.0])
        assert_allclose(mode.multipliers, [1.0, -0.5, 1.0, 0.5])
        self.assertEqual(mode.different_crease, 1)
        self.assertEqual(mode.mv, ["V", "M", "V", "V"])
        self.assertFalse(mode.degenerate)
        degenerate = LocalMode.from_multipliers([0.0, -1.0, 0.0, -1.0])
        assert_allclose(degenerate.multipliers, [0.0, 1.0, 0.0, 1.0])
        self.assertIsNone(degenerate.different_crease)
        self.assertTrue(degenerate.degenerate)
        self.assertRaises(InternalInconsistency, LocalMode.from_multipliers, [0.0, 0.0, 0.0, 0.0])

    def test_flat_foldable_modes(self):
        geometry = VertexGeometry.from_degrees(50, 110, 130, 70)
        p, q = vertex_multipliers(geometry)
        first, second = local_modes(geometry)
        self.assertEqual((first.label, second.label), (1, 2))
        self.assertEqual(first.different_crease, 0)
        self.assertEqual(second.different_crease, 1)
        assert_allclose(first.multipliers, [-q, 1.0, q, 1.0])
        assert_allclose(second.multipliers, [1.0, -p, 1.0, p])
        for mode in (first, second):
            self.assertTrue(birds_foot_check(geometry, mode.multipliers))
            assert_allclose(geometry.crease_directions.T @ mode.multipliers, 0.0, atol=1e-12)

    def test_degenerate_mode_comes_last(self):
        geometry = VertexGeometry.from_degrees(60, 60, 120, 120)
        first, second = local_modes(geometry)
        assert_allclose(first.multipliers, [1.0, -0.5, 1.0, 0.5])
        assert_allclose(second.multipliers, [0.0, 1.0, 0.0, 1.0])
        self.assertTrue(second.degenerate)

    def test_crease_indices_decide_order(self):
        geometry = VertexGeometry.from_degrees(50, 110, 130, 70)
        first, _ = local_modes(geometry, crease_indices=[7, 3, 5, 9])
        self.assertEqual(first.different_crease, 1)

    def test_non_flat_foldable_modes(self):
        geometry = VertexGeometry.from_degrees(50, 60, 120, 130)
        modes = local_modes(geometry)
        self.assertEqual(len(modes), 2)
        self.assertEqual(modes[0].different_crease, 1)
        self.assertTrue(modes[1].degenerate)
        for mode in modes:
            assert_allclose(geometry.crease_directions.T @ mode.multipliers, 0.0, atol=1e-9)
        self.assertEqual(len(tangent_directions(geometry)), 2)

    def test_generic_non_flat_foldable_modes(self):
        geometry = VertexGeometry.from_degrees(45, 80, 115, 120)
        modes = local_modes(geometry)
        self.assertEqual([mode.label for mode in modes], [1, 2])
        for mode in modes:
            self.assertFalse(mode.degenerate)
            self.assertTrue(birds_foot_check(geometry, mode.multipliers))
            assert_allclose(geometry.crease_directions.T @ mode.multipliers, 0.0, atol=1e-9)
        self.assertNotEqual(modes[0].different_crease, modes[1].different_crease)

    def test_not_rigidly_foldable(self):
        self.assertRaises(NotRigidlyFoldable, local_modes, VertexGeometry.from_degrees(190, 60, 50, 60))
        self.assertRaises(NotRigidlyFoldable, local_modes, VertexGeometry.from_degrees(90, 90, 90, 90))


class TestTransfer(unittest.TestCase):

    def test_transfer_flat_foldable(self):
        self.assertAlmostEqual(transfer_flat_foldable(1.0, 0.7), 0.7)
        self.assertAlmostEqual(transfer_flat_foldable(-0.5, 1.0), -2.0 * math.atan(0.5 * math.tan(0.5)))
        self.assertEqual(transfer_flat_foldable(0.3, 0.0), 0.0)
        self.assertRaises(AngleOutOfRange, transfer_flat_foldable, 0.5, math.pi)

    def test_flat_foldable_angles_close_the_vertex(self):
        geometry = VertexGeometry.from_degrees(50, 110, 130, 70)
        for mode in local_modes(geometry):
            for rho in (0.3, -1.2, 2.5):
                angles = flat_foldable_angles(mode, rho, 1)
                self.assertAlmostEqual(angles[1], rho)
                self.assertLess(vertex_closure_residual(geometry, angles), 1e-10)

    def test_general_matches_flat_foldable(self):
        geometry = VertexGeometry.from_degrees(50, 110, 130, 70)
        for mode in local_modes(geometry):
            for rho in (0.4, -0.8, 1.2):
                expected = flat_foldable_angles(mode, rho, 1)
                assert_allclose(transfer_general(geometry, mode, rho, driver=1), expected, atol=1e-8)

    def test_general_non_flat_foldable(self):
        geometry = VertexGeometry.from_degrees(50, 60, 120, 130)
        mode = local_modes(geometry)[0]
        angles = transfer_general(geometry, mode, 0.6)
        driver = int(np.argmax(np.abs(mode.multipliers)))
        self.assertAlmostEqual(angles[driver], 0.6)
        self.assertLess(vertex_closure_residual(geometry, angles), 1e-10)
        assert_allclose(transfer_general(geometry, mode, 0.0), np.zeros(4))
        self.assertRaises(AngleOutOfRange, transfer_general, geometry, mode, -math.pi)
        self.assertRaises(DegenerateAngles, transfer_general, geometry, local_modes(geometry)[1], 0.5, 0)

    def test_general_matches_flat_foldable_over_samples(self):
        rng = np.random.default_rng(7)
        for degrees in FLAT_FOLDABLE_VERTICES:
            geometry = VertexGeometry.from_degrees(*degrees)
            for mode in local_modes(geometry):
                driver = int(np.argmax(np.abs(mode.multipliers)))
                for rho in rng.uniform(-2.0, 2.0, 100):
                    angles = transfer_general(geometry, mode, float(rho))
                    assert_allclose(angles, flat_foldable_angles(mode, float(rho), driver), atol=1e-8)
                    self.assertLess(vertex_closure_residual(geometry, angles), 1e-9)

    def test_general_is_odd(self):
        for degrees in ((50, 110, 130, 70), (45, 80, 115, 120)):
            geometry = VertexGeometry.from_degrees(*degrees)
            for mode in local_modes(geometry):
                for rho in (0.3, 1.1):
                    assert_allclose(transfer_general(geometry, mode, -rho), -transfer_general(geometry, mode, rho),
                                    atol=1e-9)
