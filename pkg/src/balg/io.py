"""JSON file formats for algebras and bimodule actions.

Algebra files:

    {"dim": n, "basis": ["label", ...], "mul": [[i, j, k, re, im], ...]}

with zero-based indices; entries omitted from "mul" are zero.  Action files:

    {"left": [[i, p, q, re, im], ...], "right": [[p, i, q, re, im], ...]}

Saving produces a canonical form (entries sorted by indices, exact zeros
omitted) that round-trips bit-exactly for finite doubles.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .algcore import FiniteDimAlgebra
from .bimodule import BimoduleAction
from .errors import SchemaError


def _require_index(value, field: str, bound: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{field}: expected an integer index, got {value!r}")
    if not 0 <= value < bound:
        raise SchemaError(f"{field}: index {value} out of range for dimension {bound}")
    return value


def _require_number(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{field}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise SchemaError(f"{field}: non-finite value {value!r}")
    return float(value)


def _entries_to_tensor(entries, field: str, shape: tuple[int, int, int]) -> np.ndarray:
    if not isinstance(entries, list):
        raise SchemaError(f"{field}: expected a list of entries")
    tensor = np.zeros(shape, dtype=complex)
    seen = set()
    for pos, entry in enumerate(entries):
        where = f"{field}[{pos}]"
        if not isinstance(entry, list) or len(entry) != 5:
            raise SchemaError(f"{where}: expected [i, j, k, re, im]")
        i = _require_index(entry[0], f"{where}.i", shape[0])
        j = _require_index(entry[1], f"{where}.j", shape[1])
        k = _require_index(entry[2], f"{where}.k", shape[2])
        if (i, j, k) in seen:
            raise SchemaError(f"{where}: duplicate entry for indices ({i}, {j}, {k})")
        seen.add((i, j, k))
        re = _require_number(entry[3], f"{where}.re")
        im = _require_number(entry[4], f"{where}.im")
        tensor[i, j, k] = complex(re, im)
    return tensor


def _tensor_to_entries(tensor: np.ndarray) -> list:
    entries = []
    for (i, j, k), z in np.ndenumerate(tensor):
        if z.real == 0.0 and z.imag == 0.0:
            continue
        entries.append([int(i), int(j), int(k), float(z.real), float(z.imag)])
    return entries


def algebra_from_dict(obj) -> FiniteDimAlgebra:
    if not isinstance(obj, dict):
        raise SchemaError("top level: expected a JSON object")
    for field in ("dim", "basis", "mul"):
        if field not in obj:
            raise SchemaError(f"missing required field {field!r}")
    dim = obj["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise SchemaError(f"dim: expected a non-negative integer, got {dim!r}")
    basis = obj["basis"]
    if not isinstance(basis, list) or not all(isinstance(s, str) for s in basis):
        raise SchemaError("basis: expected a list of strings")
    if len(basis) != dim:
        raise SchemaError(f"basis: {len(basis)} labels for dimension {dim}")
    mul = _entries_to_tensor(obj["mul"], "mul", (dim, dim, dim))
    return FiniteDimAlgebra(mul, tuple(basis))


def algebra_to_dict(alg: FiniteDimAlgebra) -> dict:
    return {
        "dim": alg.dim,
        "basis": list(alg.basis_labels),
        "mul": _tensor_to_entries(alg.mul),
    }


def action_from_dict(obj, dim_a: int, dim_b: int) -> BimoduleAction:
    if not isinstance(obj, dict):
        raise SchemaError("top level: expected a JSON object")
    for field in ("left", "right"):
        if field not in obj:
            raise SchemaError(f"missing required field {field!r}")
    left = _entries_to_tensor(obj["left"], "left", (dim_a, dim_b, dim_b))
    right = _entries_to_tensor(obj["right"], "right", (dim_b, dim_a, dim_b))
    return BimoduleAction(left, right)


def action_to_dict(action: BimoduleAction) -> dict:
    return {
        "left": _tensor_to_entries(action.left),
        "right": _tensor_to_entries(action.right),
    }


def dumps_canonical(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _loads(path) -> object:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def load_algebra(path) -> FiniteDimAlgebra:
    try:
        return algebra_from_dict(_loads(path))
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from None


def save_algebra(alg: FiniteDimAlgebra, path=None) -> str:
    text = dumps_canonical(algebra_to_dict(alg))
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def load_action(path, dim_a: int, dim_b: int) -> BimoduleAction:
    try:
        return action_from_dict(_loads(path), dim_a, dim_b)
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from None


def save_action(action: BimoduleAction, path=None) -> str:
    text = dumps_canonical(action_to_dict(action))
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
