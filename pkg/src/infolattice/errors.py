"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Grid is not rectangular, or dimensions of two inputs do not match."""


class ParseError(ValueError):
    """A cell could not be parsed as a number.

    Coordinates are 1-based file positions (header row/label column count).
    """

    def __init__(self, row, col, text):
        super().__init__(f"row {row}, column {col}: cannot parse {text!r} as a number")
        self.row = row
        self.col = col
        self.text = text


class ConfigError(ValueError):
    """A parameter value is outside its allowed range."""


class SubsetError(ValueError):
    """Invalid variable subset: empty, overlapping, or out of range."""


class DistributionError(ValueError):
    """Probability vector violates non-negativity or normalization."""


class CapacityError(RuntimeError):
    """Requested enumeration exceeds the subset-lattice size guard."""
