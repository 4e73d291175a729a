"""The matrix JSON file format.

A matrix file holds {"n": int, "data": [[[re, im], ...], ...]} with n rows of n entries.
Floats are written with Python's shortest round-trip repr, so reading a written file
gives back the same doubles.
"""

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, TypeVar

import numpy as np

from ..errors import MalformedMatrix
from .matrix import Matrix

K = TypeVar("K")
V = TypeVar("V")


def get_optional(d: Dict[K, Any], key: Any, value_type: type[V]) -> Optional[V]:
    """Gets an optional value from a dictionary.

    Args:
        d: The dictionary to get the value from.
        key: The key to get the value for.
        value_type: The type of the value.

    Returns:
        The value, or None if the key is not present.

    Examples:
    >>> get_optional({"n": 2}, "n", int)
    2
    >>> get_optional({"n": 2}, "n", list)
    Traceback (most recent call last):
    ...
    TypeError: Invalid n: expected a value of type <class 'list'>
    >>> get_optional({"n": 2}, "data", list) is None
    True
    """
    value = d.get(key)
    if value is None:
        return None
    if not isinstance(value, value_type):
        raise TypeError(f"Invalid {key}: expected a value of type {value_type}")
    return value


def get_required(d: Dict[K, Any], key: Any, value_type: type[V]) -> V:
    """Gets a required value from a dictionary.

    Args:
        d: The dictionary to get the value from.
        key: The key to get the value for.
        value_type: The type of the value.

    Returns:
        The value.

    Examples:
    >>> get_required({"n": 2}, "n", int)
    2
    >>> get_required({"n": 2}, "data", list)
    Traceback (most recent call last):
    ...
    KeyError: 'Invalid matrix: missing required key: data'
    """
    value = get_optional(d, key, value_type)
    if value is None:
        raise KeyError(f"Invalid matrix: missing required key: {key}")
    return value


def complex_to_json(value: complex) -> List[float]:
    """Encodes a complex number as [re, im].

    Examples:
    >>> complex_to_json(1.5 - 2j)
    [1.5, -2.0]
    """
    return [float(value.real), float(value.imag)]


def complex_from_json(value: Any) -> complex:
    """Decodes [re, im] into a complex number.

    Examples:
    >>> complex_from_json([0.5, 1])
    (0.5+1j)
    >>> complex_from_json([1, "x"])
    Traceback (most recent call last):
    ...
    TypeError: Expected a pair of numbers, got [1, 'x']
    """
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(part, (int, float)) and not isinstance(part, bool) for part in value)
    ):
        raise TypeError(f"Expected a pair of numbers, got {value!r}")
    re, im = float(value[0]), float(value[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise TypeError(f"Expected finite numbers, got {value!r}")
    return complex(re, im)


def matrix_to_dict(m: Matrix) -> Dict[str, Any]:
    """Encodes a matrix as a JSON-ready dictionary.

    Examples:
    >>> matrix_to_dict(Matrix([[1, 2j], [0, 0]]))
    {'n': 2, 'data': [[[1.0, 0.0], [0.0, 2.0]], [[0.0, 0.0], [0.0, 0.0]]]}
    """
    return {"n": m.n, "data": [[complex_to_json(entry) for entry in row] for row in m.value]}


def matrix_from_dict(d: Dict[str, Any]) -> Matrix:
    """Decodes a matrix from a dictionary produced by 'matrix_to_dict'.

    Raises:
        MalformedMatrix: If the dictionary does not describe a finite n-by-n matrix.

    Examples:
    >>> matrix_from_dict({"n": 1, "data": [[[2, 0]]]}) == Matrix([[2]])
    True
    >>> matrix_from_dict({"n": 2, "data": [[[1, 0]]]})
    Traceback (most recent call last):
    ...
    ginv.errors.MalformedMatrix: expected 2 rows, got 1
    """
    try:
        n = get_required(d, "n", int)
        rows = get_required(d, "data", list)
    except (KeyError, TypeError) as err:
        raise MalformedMatrix(str(err).strip("'")) from err
    if isinstance(n, bool) or n < 1:
        raise MalformedMatrix(f"n must be a positive integer, got {n!r}")
    if len(rows) != n:
        raise MalformedMatrix(f"expected {n} rows, got {len(rows)}")
    entries = np.zeros((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise MalformedMatrix(f"row {i} must hold {n} entries")
        for j, entry in enumerate(row):
            try:
                entries[i, j] = complex_from_json(entry)
            except TypeError as err:
                raise MalformedMatrix(f"entry ({i}, {j}): {err}") from err
    return Matrix(entries)


def read_matrix(path: Path) -> Matrix:
    """Reads a matrix file.

    Raises:
        MalformedMatrix: If the file is missing, is not JSON, or does not hold a valid matrix.
    """
    if not path.exists():
        raise MalformedMatrix("file does not exist", path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as err:
        raise MalformedMatrix(f"cannot read matrix: {err}", path) from err
    if not isinstance(data, dict):
        raise MalformedMatrix("expected a JSON object", path)
    try:
        return matrix_from_dict(data)
    except MalformedMatrix as err:
        raise MalformedMatrix(str(err), path) from err


def write_matrix(path: Path, m: Matrix) -> None:
    """Writes a matrix file."""
    path.write_text(json.dumps(matrix_to_dict(m)) + "\n", encoding="utf-8")
