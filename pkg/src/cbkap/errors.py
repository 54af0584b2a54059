"""Exception hierarchy shared by every module of the package."""


class CbkapError(Exception):
    """Base class for all package errors."""


class UsageError(CbkapError, ValueError):
    """Bad arguments: dimension mismatch, field mismatch, index out of range."""


class SingularMatrixError(CbkapError, ArithmeticError):
    """Raised when a matrix (or field element) has no inverse."""


class EvaluationError(CbkapError):
    """A word evaluation asked for a tau value that does not exist."""


class SetupError(CbkapError):
    """TTP parameter generation ran out of retries."""


class KeygenError(CbkapError):
    """Private key generation ran out of retries."""


class ParseError(CbkapError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class ProtocolError(CbkapError):
    """Wire-level failure: framing violation, params mismatch, bad peer data."""
