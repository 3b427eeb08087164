from unittest.mock import patch
import unittest

from tessfold.exceptions import JsonFileNotFound, PackageNotComplete
from tessfold.validators import validate_json_schema


class TestValidators(unittest.TestCase):

    def setUp(self) -> None:
        self.document = {
            "vertices_coords": [[0, 0], [1, 0], [1, 1], [0, 1]],
            "edges_vertices": [[0, 1], [1, 2], [2, 3], [3, 0]],
            "edges_assignment": ["B", "B", "B", "B"]
        }
        self.schema_file = {
            "$schema": "http://json-schema.org/draft-07/schema#",
            "type": "object",
            "properties": {
                "label": {
                    "type": "integer"
                }
            },
            "required": ["label"]
        }

    def test_validate_json_schema_missing_schema(self):
        with patch("tessfold.validators.read_json_file") as read_json_file_mock:
            read_json_file_mock.side_effect = JsonFileNotFound("schema/missing.json")
            self.assertRaises(PackageNotComplete, validate_json_schema, self.document, "missing.json")

    def test_validate_json_schema(self):
        with patch("tessfold.validators.read_json_file") as read_json_file_mock:
            read_json_file_mock.return_value = self.schema_file
            self.assertEqual(validate_json_schema({"label": 1}, "dummy.json"), (True, None))
            read_json_file_mock.assert_called_once()

            valid, message = validate_json_schema({"label": "one"}, "dummy.json")
            self.assertFalse(valid)
            self.assertIn("label", message)

            valid, message = validate_json_schema({}, "dummy.json")
            self.assertFalse(valid)
            self.assertIn("'label' is a required property", message)

    def test_validate_fold_schema(self):
        self.assertEqual(validate_json_schema(self.document, "fold.json"), (True, None))

        wrong_assignment = dict(self.document, edges_assignment=["B", "B", "X", "B"])
        valid, message = validate_json_schema(wrong_assignment, "fold.json")
        self.assertFalse(valid)
        self.assertIn("edges_assignment/2", message)

        missing_edges = {"vertices_coords": self.document["vertices_coords"]}
        valid, _ = validate_json_schema(missing_edges, "fold.json")
        self.assertFalse(valid)
