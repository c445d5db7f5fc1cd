"""JSON instance files.

Schema version "1"::

    {
      "schema_version": "1",
      "m": 1, "n": 3,
      "A": [["1", "1", "1"]],
      "b": ["2"],
      "c": ["0", "0", "0"],
      "solution": ["1", "1", "0"],      # optional
      "metadata": {...}                 # optional
    }

Matrix and vector entries are decimal strings so arbitrarily large integers
survive a round trip.  Plain JSON integers are accepted on input.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Sequence

from .errors import ParseError
from .linalg import IntMatrix
from .model import Instance, Solution

SCHEMA_VERSION = "1"
_INT_RE = re.compile(r"^[+-]?\d+$")


def parse_int(value: Any, where: str) -> int:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _INT_RE.match(value.strip()):
        return int(value.strip())
    raise ParseError(f"{where}: expected a decimal integer string, got {value!r}")


def parse_vector(values: Any, where: str) -> tuple[int, ...]:
    if not isinstance(values, list):
        raise ParseError(f"{where}: expected an array")
    return tuple(parse_int(v, f"{where}[{i}]") for i, v in enumerate(values))


def instance_to_dict(
    inst: Instance, solution: Solution | Sequence[int] | None = None, metadata: dict | None = None
) -> dict:
    d: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "m": inst.m,
        "n": inst.n,
        "A": [[str(v) for v in inst.A.row(i)] for i in range(inst.m)],
        "b": [str(v) for v in inst.b],
        "c": [str(v) for v in inst.c],
    }
    if solution is not None:
        x = solution.x if isinstance(solution, Solution) else solution
        d["solution"] = [str(v) for v in x]
    if metadata:
        d["metadata"] = metadata
    return d


def dumps(obj: Any) -> str:
    """Canonical JSON text used for every file this package writes."""
    return json.dumps(obj, indent=2) + "\n"


def dump_instance(
    inst: Instance, solution: Solution | Sequence[int] | None = None, metadata: dict | None = None
) -> str:
    return dumps(instance_to_dict(inst, solution, metadata))


def instance_from_dict(d: Any) -> tuple[Instance, Solution | None, dict]:
    if not isinstance(d, dict):
        raise ParseError("instance file must contain a JSON object")
    version = d.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema_version {version!r}, expected {SCHEMA_VERSION!r}")
    for key in ("A", "b", "c"):
        if key not in d:
            raise ParseError(f"missing field {key!r}")
    if not isinstance(d["A"], list):
        raise ParseError("A: expected an array of rows")
    rows = [parse_vector(r, f"A[{i}]") for i, r in enumerate(d["A"])]
    n = parse_int(d.get("n", len(rows[0]) if rows else 0), "n")
    m = parse_int(d.get("m", len(rows)), "m")
    if len(rows) != m:
        raise ParseError(f"A has {len(rows)} rows but m = {m}")
    if any(len(r) != n for r in rows):
        raise ParseError(f"every row of A must have n = {n} entries")
    b = parse_vector(d["b"], "b")
    c = parse_vector(d["c"], "c")
    if len(b) != m or len(c) != n:
        raise ParseError(f"b must have {m} entries and c {n}, got {len(b)} and {len(c)}")
    inst = Instance(IntMatrix.from_rows(rows, cols=n), b, c)
    solution = None
    if d.get("solution") is not None:
        x = parse_vector(d["solution"], "solution")
        if len(x) != n:
            raise ParseError(f"solution has {len(x)} entries, expected {n}")
        solution = Solution(x)
    metadata = d.get("metadata") or {}
    return inst, solution, metadata


def loads_instance(text: str) -> tuple[Instance, Solution | None, dict]:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return instance_from_dict(d)


def load_instance(path: str | Path) -> tuple[Instance, Solution | None, dict]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads_instance(text)


def parse_solution_arg(arg: str) -> Solution:
    """Solution given inline (``1,0,2`` or a JSON array) or as a file path.

    A file may hold a JSON array or an instance object with ``solution``.
    """
    p = Path(arg)
    if p.is_file():
        try:
            d = json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {arg}: {exc}") from exc
        if isinstance(d, dict):
            d = d.get("solution")
        return Solution(parse_vector(d, "solution"))
    text = arg.strip()
    if text.startswith("["):
        try:
            return Solution(parse_vector(json.loads(text), "solution"))
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid inline solution: {exc}") from exc
    return Solution(tuple(parse_int(v, f"solution[{i}]") for i, v in enumerate(text.split(","))))
