import os
from unittest.mock import patch
import unittest

from pydantic import ValidationError

from tessfold.settings import BASE_DIR, Settings


class TestSettings(unittest.TestCase):

    def test_defaults(self):
        with patch.dict(os.environ, {}, clear=True):
            settings = Settings()
        self.assertEqual(settings.tolerance, 1e-9)
        self.assertEqual(settings.max_enumeration_vertices, 20)
        self.assertEqual(settings.workers, 1)
        self.assertTrue(os.path.isdir(os.path.join(BASE_DIR, "schema")))

    def test_environment(self):
        with patch.dict(os.environ, {"ORIGAMI_SELFFOLD_TOLERANCE": "1e-6", "ORIGAMI_SELFFOLD_WORKERS": "4"}):
            settings = Settings()
        self.assertEqual(settings.tolerance, 1e-6)
        self.assertEqual(settings.workers, 4)

    def test_invalid_values(self):
        with patch.dict(os.environ, {"ORIGAMI_SELFFOLD_TOLERANCE": "0"}):
            self.assertRaises(ValidationError, Settings)
        self.assertRaises(ValidationError, Settings, workers=0)
        self.assertRaises(ValidationError, Settings, max_enumeration_vertices=-1)
