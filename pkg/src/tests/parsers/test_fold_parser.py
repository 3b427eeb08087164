import math
import os
import unittest
from pathlib import Path

import numpy as np
from numpy.testing import assert_allclose

from tessfold.configspace import enumerate_modes
from tessfold.exceptions import InvalidGridSize, MalformedDocument, NonManifold, NonQuadFace
from tessfold.generators.fold_generator import FoldGenerator
from tessfold.parsers.fold_parser import import_fold
from tessfold.pattern import (KIND_IMPORTED, PatternClass, QuadTile, check_kawasaki, classify_pattern, generate_miura,
                              generate_rotationally_symmetric, sector_angles)
from tessfold.sim import propagate_fold
from tessfold.utils import read_json_file

DATA_DIR = Path(os.path.join(os.path.dirname(__file__), '..', 'data'))

SQUARE = [[0, 0], [1, 0], [1, 1], [0, 1]]
SQUARE_EDGES = [[0, 1], [1, 2], [2, 3], [3, 0]]


class TestImportFold(unittest.TestCase):

    def test_hand_drawn_pattern(self):
        pattern = import_fold(read_json_file(DATA_DIR / 'generic_2x2.fold'))
        self.assertEqual((pattern.rows, pattern.cols), (2, 2))
        self.assertEqual(pattern.kind, KIND_IMPORTED)
        self.assertIsNone(pattern.tile)
        assert_allclose(pattern.vertices[0], [-3, 10])
        assert_allclose(pattern.vertices[4], [4, 3])
        assert_allclose(pattern.vertices[8], [11, -4])
        self.assertTrue(check_kawasaki(pattern, 4))
        self.assertAlmostEqual(float(np.sum(sector_angles(pattern, 4))), 2 * math.pi)
        self.assertEqual(classify_pattern(pattern), PatternClass.GENERIC_FLAT_FOLDABLE)

    def test_round_trip_keeps_numbering(self):
        miura = generate_miura(math.radians(60), 1.0, 1.0, 3, 4)
        imported = import_fold(FoldGenerator.generate(miura))
        self.assertEqual((imported.rows, imported.cols), (3, 4))
        assert_allclose(imported.vertices, miura.vertices, atol=1e-12)
        self.assertEqual(imported.creases, miura.creases)

    def test_round_trip_keeps_the_geometry(self):
        tile = QuadTile.from_angles(np.radians([50, 110, 130, 70]))
        pattern = generate_rotationally_symmetric(tile, 3, 3)
        imported = import_fold(FoldGenerator.generate(pattern))
        self.assertEqual(imported.rows * imported.cols, 9)
        self.assertEqual(classify_pattern(imported), PatternClass.GENERIC_FLAT_FOLDABLE)
        lengths = sorted(float(np.linalg.norm(imported.vertices[a] - imported.vertices[b]))
                         for a, b in imported.creases)
        expected = sorted(float(np.linalg.norm(pattern.vertices[a] - pattern.vertices[b])) for a, b in pattern.creases)
        assert_allclose(lengths, expected, atol=1e-9)

    def test_faces_are_traced_without_faces_vertices(self):
        document = FoldGenerator.generate(generate_miura(math.radians(45), 2.0, 1.0, 2, 3))
        del document["faces_vertices"]
        pattern = import_fold(document)
        self.assertEqual((pattern.rows, pattern.cols), (2, 3))

    def test_folded_document(self):
        tile = QuadTile.from_angles(np.radians([50, 110, 130, 70]))
        pattern = generate_rotationally_symmetric(tile, 3, 3)
        point = propagate_fold(pattern, enumerate_modes(pattern)[0], 0.5)
        self.assertRaises(MalformedDocument, import_fold, FoldGenerator.generate(pattern, point))

    def test_schema_violation(self):
        self.assertRaises(MalformedDocument, import_fold, {})
        self.assertRaises(MalformedDocument, import_fold, {"vertices_coords": SQUARE, "edges_vertices": "none"})

    def test_triangle(self):
        self.assertRaises(NonQuadFace, import_fold, read_json_file(DATA_DIR / 'triangle.fold'))

    def test_non_manifold(self):
        document = {"vertices_coords": SQUARE, "edges_vertices": SQUARE_EDGES, "faces_vertices": [[0, 1, 2, 3]] * 3}
        self.assertRaises(NonManifold, import_fold, document)

    def test_single_face(self):
        self.assertRaises(InvalidGridSize, import_fold, {"vertices_coords": SQUARE, "edges_vertices": SQUARE_EDGES})

    def test_unknown_vertex(self):
        document = {"vertices_coords": SQUARE, "edges_vertices": SQUARE_EDGES[:3] + [[3, 7]]}
        self.assertRaises(MalformedDocument, import_fold, document)

    def test_boundary_assignment_inside(self):
        document = read_json_file(DATA_DIR / 'generic_2x2.fold')
        document["edges_assignment"][0] = "B"
        self.assertRaises(MalformedDocument, import_fold, document)
