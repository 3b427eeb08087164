import json
import math
from pathlib import Path
from typing import Any, Iterable, List, Tuple

from tessfold.exceptions import InvalidGridSize, InvalidOption, JsonFileNotFound, MalformedJsonFile
from tessfold.type_aliases import GridType


def read_json_file(file_name: Path, encoding: str = 'utf-8') -> Any:
    """
    Open the file in 'encoding' format & read the data from the file

    Args:
        file_name: Path specifying the json file to be read
        encoding: Encoding format in which to open the file

    Returns:
        The data read from json file

    Raises:
        JsonFileNotFound: If the file doesn't exist
        MalformedJsonFile: If the file contains invalid json
    """

    try:
        with open(file_name, encoding=encoding) as fp:
            return json.load(fp)
    except FileNotFoundError:
        raise JsonFileNotFound(str(file_name)) from None
    except json.decoder.JSONDecodeError as json_error:
        raise MalformedJsonFile(str(file_name), json_error) from None


def write_json_file(file_name: Path, data: Any, encoding: str = 'utf-8') -> None:
    """
    Open the file & write the data to the file

    Args:
        file_name: Path specifying the json file to be written to
        data: Data to be written to file
        encoding: Encoding format in which to open the file
    """

    with open(file_name, mode="w", encoding=encoding) as fp:
        json.dump(data, fp, indent=2)
        fp.write("\n")


def write_file(file_name: Path, data: Any, encoding: str = 'utf-8') -> None:
    """
     Open the file & write the data to the file

    Args:
        file_name: Path specifying the file to be written to
        data: Data to be written to file
        encoding: Encoding format in which to open the file
    """

    with open(file_name, mode="w", encoding=encoding) as fp:
        fp.write(data)


def parse_grid(grid: str) -> GridType:
    """
    Parse a face grid given as 'ROWSxCOLS'

    Args:
        grid: the grid string, for example '3x3'

    Returns:
        Tuple of (rows, cols)

    Raises:
        InvalidGridSize: when the string is malformed or a dimension is below 2
    """
    parts = grid.lower().split("x")
    if len(parts) != 2:
        raise InvalidGridSize(grid)
    try:
        rows, cols = int(parts[0]), int(parts[1])
    except ValueError:
        raise InvalidGridSize(grid) from None
    if rows < 2 or cols < 2:
        raise InvalidGridSize(grid)
    return rows, cols


def parse_angles(angles: str) -> Tuple[float, ...]:
    """Parse comma separated angles in degrees and return them in radians"""
    try:
        return tuple(math.radians(float(angle)) for angle in angles.split(","))
    except ValueError:
        raise InvalidOption(f"'{angles}' is not a comma separated list of angles in degrees") from None


def round_significant(value: float, digits: int = 15) -> float:
    """Round a float to the given number of significant digits"""
    if value == 0.0 or not math.isfinite(value):
        return float(value)
    return float(f"{value:.{digits}g}")


def round_all(values: Iterable[float], digits: int = 15) -> List[float]:
    return [round_significant(float(value), digits) for value in values]
