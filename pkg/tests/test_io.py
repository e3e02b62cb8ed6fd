import json

import pytest

from trusslab.errors import TableError, TrussError
from trusslab.io import (
    dumps,
    load_truss,
    magma_from_json,
    morphism_map_from_json,
    read_json,
    truss_from_json,
    ybmap_from_json,
)
from trusslab.ybe import YBMap


def test_dumps_is_sorted_and_stable():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


def test_truss_from_json_defaults_to_left(trivial_brace):
    t = truss_from_json({"size": 2, "diamond": [[0, 1], [1, 0]], "circ": [[0, 1], [1, 0]]})
    assert t.side == "left" and t.sigma.tolist() == [0, 1]


def test_truss_json_errors():
    with pytest.raises(TableError) as exc:
        truss_from_json({"size": 2, "diamond": [[0, 1], [1, 0]]})
    assert exc.value.kind == "parse"
    with pytest.raises(TableError) as exc:
        truss_from_json({"size": 3, "diamond": [[0, 1], [1, 0]], "circ": [[0, 1], [1, 0]]})
    assert exc.value.kind == "shape"
    with pytest.raises(TableError):
        truss_from_json({"diamond": [[0, 1], [1, 0]], "circ": [[0, 1], [1, 0]], "side": "up"})
    with pytest.raises(TrussError) as exc:
        truss_from_json({"diamond": [[0, 1], [1, 0]], "circ": [[0, 1], [1, 0]], "sigma": [0, 0]})
    assert exc.value.kind == "sigma-mismatch"


def test_read_json_errors(tmp_path):
    with pytest.raises(TableError) as exc:
        read_json(tmp_path / "missing.json")
    assert exc.value.kind == "io"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(TableError) as exc:
        read_json(bad)
    assert exc.value.kind == "parse" and "line 1" in str(exc.value)
    arr = tmp_path / "arr.json"
    arr.write_text("[1, 2]")
    with pytest.raises(TableError):
        read_json(arr)


def test_round_trips(tmp_path, structured_z4):
    t = structured_z4.trusses[5]
    p = tmp_path / "t.json"
    p.write_text(json.dumps(t.to_json()))
    assert load_truss(p) == t
    assert magma_from_json({"size": 2, "table": [[0, 0], [0, 1]]}).rows() == [[0, 0], [0, 1]]
    assert ybmap_from_json(YBMap.flip(3).to_json()) == YBMap.flip(3)


def test_morphism_map_validation():
    assert morphism_map_from_json({"map": [0, 1]}) == [0, 1]
    for bad in ({"map": "01"}, {"map": [0, True]}, {"map": [0.0]}, {}):
        with pytest.raises(TableError):
            morphism_map_from_json(bad)
