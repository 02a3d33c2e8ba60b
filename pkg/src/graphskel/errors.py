"""Exception types shared across the package."""


class GraphSkelError(Exception):
    """Base class for all package errors."""


class InvalidSimplexError(GraphSkelError):
    """Vertex list cannot form a valid simplex (empty, duplicates, dim > 2)."""


class IncompleteComplexError(GraphSkelError):
    """A listed simplex is missing one of its faces."""


class NonMonotoneError(GraphSkelError):
    """A face carries a larger filtration value than one of its cofaces."""


class ParameterError(GraphSkelError):
    """A numeric parameter is outside its legal range."""


class StateError(GraphSkelError):
    """Operation requires state that has not been computed yet (e.g. weights)."""


class DuplicatePointError(GraphSkelError):
    """Point cloud contains two identical points."""


class OracleScaleError(GraphSkelError):
    """Instance is too large for the brute-force oracle."""


class BudgetExceededError(GraphSkelError):
    """Simplex budget exceeded while building a filtration."""


class UndefinedDistanceError(GraphSkelError):
    """Graph distance is undefined (one of the graphs is empty)."""


class InputFormatError(GraphSkelError):
    """Malformed input file (ragged CSV, non-numeric cell, asymmetric matrix)."""
