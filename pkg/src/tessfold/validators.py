import os
from pathlib import Path
from urllib.parse import urlparse
from typing import Any, Tuple

from referencing import Registry, Resource
from jsonschema import Draft7Validator
from jsonschema.exceptions import ValidationError

from tessfold.exceptions import JsonFileNotFound, PackageNotComplete
from tessfold.settings import BASE_DIR
from tessfold.utils import read_json_file

SCHEMA_BASE_PATH = Path(os.path.join(BASE_DIR, 'schema'))


def validate_json_schema(data: Any, schema_name: str) -> Tuple[bool, Any]:
    """Validate already loaded json data against one of the shipped schemas. Sibling schemas referenced as
    'file:/<name>.json' are resolved from the package schema directory.

    Args:
        data: The json data to check
        schema_name: File name of the schema, for example 'report.json'

    Returns:
        False and an error message in case the data is not valid for the schema, otherwise True and None

    Raises:
        PackageNotComplete when the schema is not found
    """
    schema_path = SCHEMA_BASE_PATH / schema_name
    try:
        schema = read_json_file(schema_path)
    except JsonFileNotFound:
        raise PackageNotComplete(str(schema_path)) from None

    def retrieve_schema(uri: str): # type: ignore
        path = SCHEMA_BASE_PATH / urlparse(uri).path[1:]
        try:
            contents = read_json_file(path)
        except JsonFileNotFound:
            raise PackageNotComplete(str(path)) from None
        return Resource.from_contents(contents)

    try:
        registry = Registry(retrieve=retrieve_schema) # type: ignore
        Draft7Validator(schema, registry=registry).validate(data)
        return True, None
    except ValidationError as ve:
        location = "/".join(str(part) for part in ve.absolute_path)
        return False, f"{ve.message} (at '{location}')" if location else ve.message
