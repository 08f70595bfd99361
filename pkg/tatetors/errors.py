"""Exception classes shared by the tatetors modules."""


class TatetorsError(Exception):
    """Base class for all tatetors errors."""

    pass


class ConfigurationError(TatetorsError):
    """Exception raised for configuration errors."""

    pass


class DimensionMismatchError(TatetorsError, ValueError):
    """Exception raised when shapes, ambient dimensions or fields disagree."""

    pass


class InexactSequenceError(TatetorsError):
    """Exception raised when a candidate short exact sequence is not exact.

    The *reason* attribute names the first failed condition.
    """

    def __init__(self, reason, detail=None):
        self.reason = reason
        self.detail = detail
        message = reason if detail is None else "%s: %s" % (reason, detail)
        super().__init__(message)


class NotAdmissibleError(TatetorsError):
    """Exception raised when an input fails an admissibility precondition."""

    def __init__(self, reason, detail=None):
        self.reason = reason
        message = reason if detail is None else "%s: %s" % (reason, detail)
        super().__init__(message)


class LatticeError(TatetorsError, ValueError):
    """Exception raised for invalid lattice data."""

    pass


class PrecisionError(TatetorsError):
    """Exception raised when a truncated computation leaves its window."""

    pass


class VerificationError(TatetorsError):
    """Exception raised when a constructed object fails its self-check."""

    pass


class InvalidReferenceError(TatetorsError):
    """Exception raised when an invalid simplex reference is encountered."""

    pass


class SimplicialIdentityError(TatetorsError):
    """Exception raised when a face identity fails on a stored simplex."""

    def __init__(self, simplex, i, j):
        self.simplex = simplex
        self.i = i
        self.j = j
        super().__init__(
            "face identity d%d d%d = d%d d%d fails on simplex %s"
            % (i, j, j - 1, i, simplex)
        )


class DegreeOutOfRangeError(TatetorsError, ValueError):
    """Exception raised when a cohomological degree exceeds the dimension cap."""

    pass


class BudgetExceededError(TatetorsError):
    """Exception raised when an enumeration would exceed its budget."""

    pass


class InvalidGerbeError(TatetorsError):
    """Exception raised for gerbe data violating the degree-4 condition."""

    pass


class ParseError(TatetorsError, ValueError):
    """Exception raised for malformed input files, with a location."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "line %d, column %d: %s" % (line, column or 1, message)
        super().__init__(message)
