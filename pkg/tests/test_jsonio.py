import pytest

from gmalg import jsonio
from gmalg.errors import InputError
from gmalg.families import full_matrix_gma, triangular_gma
from gmalg.maps import LinMap
from gmalg.morita import build_gma, validate_context
from gmalg.rings import Rationals, Zmod


def test_algebra_round_trip(t3_z3):
    doc = jsonio.algebra_to_json(t3_z3.algebra)
    back = jsonio.algebra_from_json(doc)
    assert back.table == t3_z3.algebra.table
    assert back.unit == t3_z3.algebra.unit
    assert back.labels == t3_z3.algebra.labels


def test_context_round_trip(m2_z3):
    doc = jsonio.context_to_json(m2_z3.ctx)
    ctx = jsonio.context_from_json(doc)
    assert validate_context(ctx) == []
    G = build_gma(ctx)
    assert G.algebra.table == m2_z3.algebra.table


def test_rational_context_round_trip():
    G = triangular_gma(Rationals(), 2, 1)
    ctx = jsonio.context_from_json(jsonio.context_to_json(G.ctx))
    assert build_gma(ctx).algebra.table == G.algebra.table


def test_map_round_trip(m2_z3):
    theta = LinMap.identity(m2_z3.ring, m2_z3.dim).scale(2)
    back = jsonio.map_from_json(theta.to_json(), m2_z3.ring)
    assert back == theta


def test_dumps_is_canonical():
    a = jsonio.dumps({"b": 1, "a": [2, 3]})
    b = jsonio.dumps({"a": [2, 3], "b": 1})
    assert a == b == '{"a":[2,3],"b":1}\n'


def test_schema_mismatch_rejected(m2_z3):
    doc = jsonio.context_to_json(m2_z3.ctx)
    doc["schema"] = "context/999"
    with pytest.raises(InputError):
        jsonio.context_from_json(doc)
    with pytest.raises(InputError):
        jsonio.map_from_json({"schema": "map/0", "matrix": []}, Zmod(3))


def test_load_file_rejects_garbage(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("[1, 2,")
    with pytest.raises(InputError):
        jsonio.load_file(str(p))
    with pytest.raises(InputError):
        jsonio.load_file(str(tmp_path / "missing.json"))
