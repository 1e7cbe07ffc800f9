import json

import pytest
from hypothesis import given, settings, strategies as st

from matcat.algebra import doubled_maps_algebra, truncated_delta, type_A
from matcat.io import (WorkspaceError, algebra_to_json, builtin_workspace, dumps, matrix_from_json, matrix_to_json,
                       module_from_json, module_to_json, parse_field, parse_json_text, sequence_from_json,
                       sequence_to_json, workspace_from_json)
from matcat.linalg import FieldSpec, Matrix
from matcat.modules import almost_split_sequence, enumerate_indecomposables, simple

QQ = FieldSpec.rationals()


def test_malformed_json_reports_position():
    with pytest.raises(WorkspaceError, match="line 2, column 5"):
        parse_json_text('{"a": 1,\n    }', "ws.json")


@pytest.mark.parametrize("text,expected", [("Q", QQ), ("Fp:7", FieldSpec.prime(7)), ("5", FieldSpec.prime(5))])
def test_parse_field(text, expected):
    assert parse_field(text) == expected


def test_parse_field_rejects_garbage():
    with pytest.raises(WorkspaceError):
        parse_field("Fp:6")


@given(st.lists(st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=9), min_size=2, max_size=2),
                min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_matrix_round_trip(rows):
    M = Matrix(QQ, len(rows), 2, rows)
    data = json.loads(json.dumps(matrix_to_json(M)))
    assert matrix_from_json(QQ, data, M.rows, M.cols, "m") == M


def test_matrix_shape_checked():
    with pytest.raises(WorkspaceError, match="shape"):
        matrix_from_json(QQ, [["1", "2"]], 2, 2, "m")


@pytest.mark.parametrize("make", [lambda: type_A(3), lambda: truncated_delta(5),
                                  lambda: doubled_maps_algebra(type_A(2))])
def test_algebra_round_trip(make):
    A = make()
    j = algebra_to_json(A)
    B = workspace_from_json(json.loads(dumps(j))).algebra
    assert algebra_to_json(B) == j
    assert B.hom_matrix() == A.hom_matrix()


def test_module_round_trip(A3):
    for M in enumerate_indecomposables(A3):
        assert module_from_json(A3, json.loads(dumps(module_to_json(M)))) == M


def test_module_unknown_arrow(A2):
    with pytest.raises(WorkspaceError, match="unknown arrow 'zz'"):
        module_from_json(A2, {"dims": {"1": 1, "2": 1}, "maps": {"zz": [["1"]]}})


def test_module_bad_relation():
    D = truncated_delta(2)
    with pytest.raises(WorkspaceError):
        module_from_json(D, {"dims": {"0": 1, "1": 1, "2": 1}, "maps": {"alpha0": [["1"]], "alpha1": [["1"]]}})


def test_sequence_round_trip(A2):
    ses = almost_split_sequence(simple(A2, "1"))
    j, p = sequence_from_json(A2, json.loads(dumps(sequence_to_json(ses.j, ses.p))))
    assert j == ses.j and p == ses.p


def test_workspace_unknown_reference_named():
    ws = builtin_workspace("a2")
    ws["morphisms"] = {"f": {"source": "S1", "target": "Nope", "comps": {}}}
    with pytest.raises(WorkspaceError, match="Nope"):
        workspace_from_json(ws)


def test_workspace_generator_list_checked():
    ws = builtin_workspace("a3")
    ws["subcategories"] = {"g": ["S1", "Ghost"]}
    with pytest.raises(WorkspaceError, match="Ghost"):
        workspace_from_json(ws)


def test_field_override():
    ws = workspace_from_json(builtin_workspace("a3"), FieldSpec.prime(3))
    assert ws.algebra.field == FieldSpec.prime(3)


def test_dumps_is_canonical():
    a = dumps({"b": 1, "a": [1, 2]})
    assert a == dumps(json.loads(a))
    assert a.index('"a"') < a.index('"b"')
