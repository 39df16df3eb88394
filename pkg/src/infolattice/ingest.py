"""Loading, saving, orienting and subsetting the raw data matrix.

A data matrix holds m observations (rows) of n real-valued variables
(columns).  Values are 64-bit floats; NaN and infinities are rejected at
load time.  All operations return new immutable matrices.
"""

import csv
import math

import numpy as np

from .errors import ParseError, ShapeError

VARIABLES_AS_COLUMNS = "variables-as-columns"
VARIABLES_AS_ROWS = "variables-as-rows"


class DataMatrix:
    """m x n grid of finite measurements with row/column labels.

    Rows are always observations and columns are always variables in
    memory; ``orientation`` only records whether the matrix was transposed
    relative to its on-disk layout.
    """

    __slots__ = ("values", "row_labels", "col_labels", "orientation")

    def __init__(self, values, row_labels, col_labels,
                 orientation=VARIABLES_AS_COLUMNS):
        values = np.array(values, dtype=np.float64)
        if values.ndim != 2:
            raise ShapeError(f"expected a 2-d grid, got {values.ndim} dims")
        if not np.isfinite(values).all():
            i, j = np.argwhere(~np.isfinite(values))[0]
            raise ValueError(f"non-finite value at row {i}, column {j}")
        m, n = values.shape
        if m < 1 or n < 1:
            raise ShapeError(f"empty matrix ({m}x{n})")
        row_labels = tuple(str(x) for x in row_labels)
        col_labels = tuple(str(x) for x in col_labels)
        if len(row_labels) != m:
            raise ShapeError(f"{len(row_labels)} row labels for {m} rows")
        if len(col_labels) != n:
            raise ShapeError(f"{len(col_labels)} column labels for {n} columns")
        if len(set(row_labels)) != m:
            raise ValueError("duplicate row labels")
        if len(set(col_labels)) != n:
            raise ValueError("duplicate column labels")
        if orientation not in (VARIABLES_AS_COLUMNS, VARIABLES_AS_ROWS):
            raise ValueError(f"unknown orientation {orientation!r}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "row_labels", row_labels)
        object.__setattr__(self, "col_labels", col_labels)
        object.__setattr__(self, "orientation", orientation)

    def __setattr__(self, name, value):
        raise AttributeError("DataMatrix is immutable")

    @property
    def m(self):
        return self.values.shape[0]

    @property
    def n(self):
        return self.values.shape[1]

    def __eq__(self, other):
        if not isinstance(other, DataMatrix):
            return NotImplemented
        return (self.values.shape == other.values.shape
                and bool(np.all(self.values == other.values))
                and self.row_labels == other.row_labels
                and self.col_labels == other.col_labels
                and self.orientation == other.orientation)

    def __repr__(self):
        return f"DataMatrix({self.m}x{self.n}, {self.orientation})"


def _parse_cell(text, row, col):
    try:
        value = float(text)
    except ValueError:
        raise ParseError(row, col, text) from None
    if not math.isfinite(value):
        raise ValueError(f"row {row}, column {col}: non-finite value {text!r}")
    return value


def load_matrix(path, delimiter=",", has_header=True):
    """Load a delimited text file into a DataMatrix.

    With ``has_header`` the first row holds variable labels and the first
    column holds observation labels (the top-left corner cell is ignored).
    Without it every cell is data and labels R1..Rm / V1..Vn are generated.

    Raises ShapeError for ragged rows or fewer than 2 observations,
    ParseError (with 1-based file coordinates) for an unparseable cell, and
    ValueError for NaN/infinite values or duplicate labels.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh, delimiter=delimiter)]
    rows = [r for r in rows if r]  # tolerate a trailing blank line
    if not rows:
        raise ShapeError(f"{path}: no rows")
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise ShapeError(
                f"{path}: row {i + 1} has {len(r)} cells, expected {width}")

    if has_header:
        if len(rows) < 2 or width < 2:
            raise ShapeError(f"{path}: too small for a labeled matrix")
        col_labels = [c.strip() for c in rows[0][1:]]
        row_labels = [r[0].strip() for r in rows[1:]]
        data = [[_parse_cell(cell, i + 2, j + 2)
                 for j, cell in enumerate(r[1:])]
                for i, r in enumerate(rows[1:])]
    else:
        col_labels = [f"V{j + 1}" for j in range(width)]
        row_labels = [f"R{i + 1}" for i in range(len(rows))]
        data = [[_parse_cell(cell, i + 1, j + 1)
                 for j, cell in enumerate(r)]
                for i, r in enumerate(rows)]

    if len(data) < 2:
        raise ShapeError(f"{path}: need at least 2 observations, got {len(data)}")
    return DataMatrix(data, row_labels, col_labels)


def save_matrix(d, path, delimiter=","):
    """Write a DataMatrix with labels; floats use shortest round-trip text."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        w.writerow([""] + list(d.col_labels))
        for label, row in zip(d.row_labels, d.values):
            w.writerow([label] + [repr(float(x)) for x in row])


def transpose(d):
    """Swap observations and variables (involution)."""
    flipped = (VARIABLES_AS_ROWS if d.orientation == VARIABLES_AS_COLUMNS
               else VARIABLES_AS_COLUMNS)
    return DataMatrix(d.values.T, d.col_labels, d.row_labels, flipped)


def _check_indices(idx, limit, axis):
    idx = list(idx)
    for i in idx:
        if not isinstance(i, (int, np.integer)) or not 0 <= i < limit:
            raise IndexError(f"{axis} index {i} out of range [0, {limit})")
    if len(set(idx)) != len(idx):
        raise IndexError(f"duplicate {axis} index")
    return idx


def select(d, rows=None, cols=None):
    """Submatrix from 0-based row/column index lists (order preserved).

    None keeps an axis unchanged.  Out-of-range or duplicate indices raise
    IndexError.
    """
    rows = list(range(d.m)) if rows is None else _check_indices(rows, d.m, "row")
    cols = list(range(d.n)) if cols is None else _check_indices(cols, d.n, "column")
    values = d.values[np.ix_(rows, cols)]
    return DataMatrix(values,
                      [d.row_labels[i] for i in rows],
                      [d.col_labels[j] for j in cols],
                      d.orientation)
