"""Delimited-text ingestion and emission of data matrices and group labels.

The reader auto-detects tab vs. comma delimiters, an optional header row, and
an optional row-id first column; parse failures name the offending file line.
The writer prints values at 17 significant digits, so a write/read round trip
reproduces every float exactly.
"""

from __future__ import annotations

import numpy as np

from .datamodel import DataMatrix, GroupLabels

__all__ = [
    "MatrixParseError",
    "read_labels",
    "read_matrix",
    "write_matrix",
]


class MatrixParseError(ValueError):
    """Malformed delimited-text input; the message names the file location."""


def _is_number(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def _split_rows(text: str, path: str) -> tuple[list[list[str]], str]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MatrixParseError(f"{path}: file is empty")
    delimiter = "\t" if "\t" in lines[0] else ","
    return [[tok.strip() for tok in ln.split(delimiter)] for ln in lines], delimiter


def read_matrix(path) -> DataMatrix:
    """Parse a delimited-text matrix with optional header row and row-id column."""
    path = str(path)
    with open(path, "r", encoding="utf-8") as fh:
        rows, _ = _split_rows(fh.read(), path)

    first_numeric = all(_is_number(t) for t in rows[0])
    if first_numeric:
        header = False
    elif (
        len(rows) > 1
        and len(rows[0]) > 1
        and all(_is_number(t) for t in rows[0][1:])
        and not all(_is_number(r[0]) for r in rows[1:])
    ):
        # Non-numeric leading token on every row: a row-id column, not a header.
        header = False
    else:
        header = True

    header_row = rows[0] if header else None
    data_rows = rows[1:] if header else rows
    if not data_rows:
        raise MatrixParseError(f"{path}: no data rows below the header")

    row_id_col = all(len(r) >= 2 and not _is_number(r[0]) for r in data_rows)
    width = len(data_rows[0])
    values = []
    row_ids = []
    for i, row in enumerate(data_rows):
        line_no = i + 2 if header else i + 1
        if len(row) != width:
            raise MatrixParseError(
                f"{path}: line {line_no}: expected {width} fields, got {len(row)}"
            )
        tokens = row[1:] if row_id_col else row
        if row_id_col:
            row_ids.append(row[0])
        parsed = []
        for j, tok in enumerate(tokens):
            try:
                parsed.append(float(tok))
            except ValueError:
                raise MatrixParseError(
                    f"{path}: line {line_no}, field {j + (2 if row_id_col else 1)}: "
                    f"not a number: {tok!r}"
                ) from None
        values.append(parsed)

    col_ids: tuple[str, ...] = ()
    if header_row is not None:
        header_tokens = header_row[1:] if (row_id_col and len(header_row) == width) else header_row
        if len(header_tokens) == len(values[0]):
            col_ids = tuple(header_tokens)
    try:
        return DataMatrix(np.asarray(values), row_ids=tuple(row_ids), col_ids=col_ids)
    except ValueError as exc:
        raise MatrixParseError(f"{path}: {exc}") from exc


def read_labels(path, n_cols: int) -> GroupLabels:
    """Parse N group labels (values 1 or 2), whitespace/comma/newline separated."""
    path = str(path)
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().replace(",", " ").split()
    if len(tokens) != n_cols:
        raise MatrixParseError(f"{path}: expected {n_cols} group labels, got {len(tokens)}")
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise MatrixParseError(f"{path}: group labels must be integers 1 or 2") from None
    try:
        return GroupLabels(np.asarray(values))
    except ValueError as exc:
        raise MatrixParseError(f"{path}: {exc}") from exc


def write_matrix(matrix: DataMatrix, path, delimiter: str = "\t") -> None:
    """Emit a matrix with a header row and row-id column at full float precision."""
    path = str(path)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("id" + delimiter + delimiter.join(matrix.col_ids) + "\n")
        for rid, row in zip(matrix.row_ids, matrix.values):
            fh.write(rid + delimiter + delimiter.join(f"{v:.17g}" for v in row) + "\n")
