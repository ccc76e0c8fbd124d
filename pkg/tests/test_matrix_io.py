import json

import pytest
from hypothesis import given

from strategies import matrices, rationals
from tpkit.errors import ParseError, ShapeError
from tpkit.matrix_io import format_matrix, guess_format, parse_matrix_text, read_matrix


@given(matrices(1, 4, rationals, square=False))
def test_json_round_trip(A):
    text = format_matrix(A, "json")
    assert parse_matrix_text(text, "json") == A
    assert format_matrix(parse_matrix_text(text, "json"), "json") == text


@given(matrices(1, 4, rationals, square=False))
def test_csv_round_trip(A):
    text = format_matrix(A, "csv")
    assert parse_matrix_text(text, "csv") == A


def test_canonical_form():
    A = parse_matrix_text('{"data": [["2/4", "-6/3"], ["0", "7"]]}')
    assert json.loads(format_matrix(A)) == {"rows": 2, "cols": 2, "data": [["1/2", "-2"], ["0", "7"]]}


def test_bad_entry_position_json():
    with pytest.raises(ParseError) as info:
        parse_matrix_text('{"data": [["1", "2"], ["3", "x"]]}')
    assert (info.value.line, info.value.column) == (2, 2)


def test_bad_entry_position_csv():
    with pytest.raises(ParseError) as info:
        parse_matrix_text("1,2\n3,1/0\n", "csv")
    assert (info.value.line, info.value.column) == (2, 2)


def test_invalid_json_reports_location():
    with pytest.raises(ParseError) as info:
        parse_matrix_text('{"data": [["1",]]}')
    assert info.value.line == 1 and info.value.column is not None


@pytest.mark.parametrize(
    "text",
    ['{"data": [["1", "2"], ["3"]]}', '{"rows": 3, "data": [["1"]]}'],
)
def test_shape_errors(text):
    with pytest.raises(ShapeError):
        parse_matrix_text(text)


@pytest.mark.parametrize("text", ["[1, 2]", '{"rows": 1}', '{"data": [1, 2]}'])
def test_structure_errors(text):
    with pytest.raises(ParseError):
        parse_matrix_text(text)


def test_csv_blank_lines_and_empty():
    assert parse_matrix_text("1,2\n\n3,4\n", "csv").shape == (2, 2)
    with pytest.raises(ParseError):
        parse_matrix_text("\n\n", "csv")


def test_format_guess_and_missing_file(tmp_path):
    assert guess_format("m.CSV") == "csv"
    assert guess_format("m.json") == "json"
    assert guess_format("m.txt", "csv") == "csv"
    with pytest.raises(ParseError):
        read_matrix(str(tmp_path / "missing.json"))
