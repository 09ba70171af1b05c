"""Exception types shared across the package."""


class HyperformError(Exception):
    """Base class for all library-specific errors."""


class DomainError(HyperformError):
    """A scalar function or chart was evaluated outside its domain."""


class SingularMatrix(HyperformError):
    """A matrix inversion was requested below the singularity tolerance."""

    def __init__(self, det: float, message: str | None = None):
        self.det = det
        super().__init__(message or f"matrix is numerically singular (det={det!r})")


class DegenerateChart(HyperformError):
    """The chart's tangent frame is (numerically) linearly dependent at the point."""


class ConsistencyError(HyperformError):
    """Two independent computation routes for the same quantity disagree.

    Carries both results so the caller can inspect the mismatch.
    """

    def __init__(self, message: str, first, second):
        self.first = first
        self.second = second
        super().__init__(message)


class DegenerateFourthForm(HyperformError):
    """det(IV) is numerically zero: the fourth-form Laplacian is undefined here."""


class NotArcLength(HyperformError):
    """The profile curve is not parametrized by arc length (W != 1) at the point."""

    def __init__(self, w_value: float):
        self.w_value = w_value
        super().__init__(f"profile is not arc-length parametrized here (W={w_value!r})")


class ParseError(HyperformError):
    """Malformed expression source. Carries the byte offset and expected tokens."""

    def __init__(self, offset: int, expected: tuple[str, ...], found: str = ""):
        self.offset = offset
        self.expected = expected
        self.found = found
        want = " or ".join(expected)
        got = f", found {found!r}" if found else ""
        super().__init__(f"parse error at offset {offset}: expected {want}{got}")


class UnboundParameter(HyperformError):
    """An expression references a parameter with no bound value."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound parameter {name!r}")
