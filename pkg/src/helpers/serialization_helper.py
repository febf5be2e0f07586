import dataclasses
import json
import re
from enum import Enum

import numpy as np
import pandas as pd

_COMPLEX_PATTERN = re.compile(
    r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$"
    r"|^([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)?[+-]?((\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)?[ij]$"
)


def parse_complex(text: str) -> complex:
    """
    Parses ``a+bi`` style complex literals (``0.25``, ``-3+4i``, ``2i``, ``-i``).

    Raises:
        ValueError: If the text is not a complex literal.
    """
    cleaned = str(text).strip().replace(" ", "").replace("−", "-")
    if not cleaned or not _COMPLEX_PATTERN.match(cleaned):
        raise ValueError(f"Invalid complex number: '{text}'")
    return complex(cleaned.replace("i", "j"))


def to_jsonable(obj):
    """
    Recursively converts reports (dataclasses, numpy values, complex numbers,
    enums) into plain JSON types. Complex numbers become ``{"re": .., "im": ..}``.
    Dataclass fields declared with ``metadata={"serialize": False}`` are skipped.
    """
    if isinstance(obj, Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            field.name: to_jsonable(getattr(obj, field.name))
            for field in dataclasses.fields(obj)
            if field.metadata.get("serialize", True)
        }
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(value) for value in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(value) for value in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def dumps_report(report) -> str:
    """Deterministic JSON text for a report."""
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2)


def rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    """
    Renders rows as CSV text with a fixed header order.
    """
    df = pd.DataFrame(rows, columns=columns)
    return df.to_csv(index=False, lineterminator="\n", float_format="%.15g")


def flatten(report, prefix: str = "") -> dict:
    """
    Flattens a report into one CSV row; nested keys are joined with dots and
    lists are kept as JSON text.
    """
    data = to_jsonable(report)
    if not isinstance(data, dict):
        return {prefix or "value": data}
    row = {}
    for key, value in data.items():
        name = f"{prefix}.{key}" if prefix else key
        if isinstance(value, dict) and set(value) != {"re", "im"}:
            row.update(flatten(value, name))
        elif isinstance(value, (dict, list)):
            row[name] = json.dumps(value, sort_keys=True)
        else:
            row[name] = value
    return row
