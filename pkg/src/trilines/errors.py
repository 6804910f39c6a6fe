"""Exception hierarchy shared by every trilines module."""


class TrilinesError(Exception):
    """Base class for all errors raised by this package."""


class InvalidHomogeneous(TrilinesError, ValueError):
    """A homogeneous triple was all zeros."""


class DegenerateJoin(TrilinesError, ValueError):
    pass


class DegenerateMeet(TrilinesError, ValueError):
    pass


class SingularTransform(TrilinesError, ValueError):
    pass


class NotOnSegmentLine(TrilinesError, ValueError):
    pass


class InvalidHalfLineQuery(TrilinesError, ValueError):
    pass


class InvalidConfiguration(TrilinesError, ValueError):
    """Fewer than three points, or duplicate points after canonicalization."""


class CollinearInput(TrilinesError, ValueError):
    """Every point of the configuration lies on a single line.

    The offending line is kept on ``self.line``.
    """

    def __init__(self, line, message=None):
        self.line = line
        super().__init__(message or f"all points lie on the line {tuple(line)}")


class StructureMismatch(TrilinesError, ValueError):
    pass


class WrongCase(TrilinesError, ValueError):
    """A proof case was invoked on data that does not satisfy its hypothesis."""


class CertificateMismatch(TrilinesError, AssertionError):
    """A proof-path claim disagreed with the brute-force recount."""


class InvalidParams(TrilinesError, ValueError):
    pass


class FamilyCheckFailed(TrilinesError):
    pass


class GenerationExhausted(TrilinesError):
    pass


class ParseError(TrilinesError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
