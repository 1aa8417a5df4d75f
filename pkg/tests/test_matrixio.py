"""Delimited-text matrix ingestion and emission."""

import numpy as np
import pytest

from splitpval.datamodel import DataMatrix
from splitpval.matrixio import MatrixParseError, read_labels, read_matrix, write_matrix


def test_roundtrip_reproduces_values_exactly(tmp_path):
    rng = np.random.default_rng(0)
    m = DataMatrix(
        rng.standard_normal((20, 7)) * 10 ** rng.integers(-8, 8, size=(20, 7)),
        row_ids=tuple(f"g{i}" for i in range(20)),
        col_ids=tuple(f"s{j}" for j in range(7)),
    )
    path = tmp_path / "m.tsv"
    write_matrix(m, path)
    back = read_matrix(path)
    np.testing.assert_array_equal(back.values, m.values)
    assert back.row_ids == m.row_ids
    assert back.col_ids == m.col_ids


def test_plain_numeric_matrix_without_header(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("1,2,3\n4,5,6\n")
    m = read_matrix(path)
    np.testing.assert_array_equal(m.values, [[1, 2, 3], [4, 5, 6]])
    assert m.row_ids == ("r1", "r2")
    assert m.col_ids == ("c1", "c2", "c3")


def test_header_detection_keeps_values_identical(tmp_path):
    bare = tmp_path / "bare.csv"
    bare.write_text("1.5,2.5\n3.5,4.5\n")
    headed = tmp_path / "headed.csv"
    headed.write_text("a,b\n1.5,2.5\n3.5,4.5\n")
    m1, m2 = read_matrix(bare), read_matrix(headed)
    np.testing.assert_array_equal(m1.values, m2.values)
    assert m2.col_ids == ("a", "b")
    assert m1.col_ids == ("c1", "c2")


def test_row_id_column_without_header(tmp_path):
    path = tmp_path / "ids.csv"
    path.write_text("gene1,1,2\ngene2,3,4\n")
    m = read_matrix(path)
    assert m.row_ids == ("gene1", "gene2")
    np.testing.assert_array_equal(m.values, [[1, 2], [3, 4]])


def test_tab_delimiter_autodetected(tmp_path):
    path = tmp_path / "tabs.tsv"
    path.write_text("id\tc1\tc2\nr1\t1\t2\n")
    m = read_matrix(path)
    np.testing.assert_array_equal(m.values, [[1, 2]])
    assert m.col_ids == ("c1", "c2")


def test_ragged_row_error_names_line(tmp_path):
    path = tmp_path / "ragged.csv"
    path.write_text("1,2,3\n4,5\n")
    with pytest.raises(MatrixParseError, match="line 2"):
        read_matrix(path)


def test_bad_token_error_names_location(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,2\n3,oops\n")
    with pytest.raises(MatrixParseError, match="line 2"):
        read_matrix(path)


def test_empty_file_rejected(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("\n")
    with pytest.raises(MatrixParseError):
        read_matrix(path)


def test_labels_roundtrip_and_dimension_check(tmp_path):
    path = tmp_path / "labels.txt"
    path.write_text("1 1 2 2 2\n")
    labels = read_labels(path, 5)
    np.testing.assert_array_equal(labels.assignment, [1, 1, 2, 2, 2])
    with pytest.raises(MatrixParseError, match="expected 4"):
        read_labels(path, 4)


def test_labels_value_check(tmp_path):
    path = tmp_path / "labels.txt"
    path.write_text("1,2,3\n")
    with pytest.raises(MatrixParseError):
        read_labels(path, 3)
