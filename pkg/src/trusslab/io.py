"""JSON interchange for tables, trusses, morphisms and Yang-Baxter maps."""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import MagmaTable, validate_group
from .errors import TableError
from .truss import LEFT, SIDES, SkewTruss, build_truss
from .ybe import YBMap


def dumps(obj) -> str:
    """Deterministic serialization: sorted keys, fixed indentation."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(obj, path: str | Path | None = None) -> str:
    text = dumps(obj)
    if path is not None:
        Path(path).write_text(text)
    return text


def read_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise TableError(f"cannot read {path}: {exc.strerror}", kind="io") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", kind="parse") from exc
    if not isinstance(data, dict):
        raise TableError(f"{path}: expected a JSON object", kind="parse")
    return data


def _field(data: dict, key: str):
    if key not in data:
        raise TableError(f"missing field {key!r}", kind="parse")
    return data[key]


def _sized_table(data: dict, key: str) -> MagmaTable:
    m = MagmaTable(_field(data, key))
    size = data.get("size")
    if size is not None and size != m.size:
        raise TableError(f"field {key!r} has {m.size} rows but size is {size}", kind="shape")
    return m


def magma_from_json(data: dict) -> MagmaTable:
    return _sized_table(data, "table")


def truss_from_json(data: dict) -> SkewTruss:
    """Reads {"size", "diamond", "circ", "side"?, "sigma"?}; a given sigma is checked, not trusted."""
    group = validate_group(_sized_table(data, "diamond"))
    circ = _sized_table(data, "circ")
    side = data.get("side", LEFT)
    if side not in SIDES:
        raise TableError(f"side must be one of {', '.join(SIDES)}", kind="parse")
    return build_truss(group, circ, side, data.get("sigma"))


def load_truss(path: str | Path) -> SkewTruss:
    return truss_from_json(read_json(path))


def morphism_map_from_json(data: dict) -> list[int]:
    f = _field(data, "map")
    if not isinstance(f, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in f):
        raise TableError("map must be a list of integers", kind="parse")
    return f


def ybmap_from_json(data: dict) -> YBMap:
    return YBMap.from_pairs(int(_field(data, "size")), _field(data, "r"))
