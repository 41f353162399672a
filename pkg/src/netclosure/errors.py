class NetClosureError(Exception):
    """Base class for all library errors."""


class UsageError(NetClosureError, ValueError):
    """Bad arguments: foreign node sets, unknown labels, absent edges."""


class ParseError(UsageError):
    """Malformed graph, matrix or map input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SizeLimitError(NetClosureError, ValueError):
    """An exponential enumeration was requested over too large a ground set."""


DEFAULT_MAX_N = 20
HARD_MAX_N = 28


def check_size(n, max_n=DEFAULT_MAX_N, what="ground set"):
    if max_n > HARD_MAX_N:
        raise SizeLimitError(f"max_n={max_n} exceeds the hard limit of {HARD_MAX_N}")
    if n > max_n:
        raise SizeLimitError(f"{what} has {n} nodes; limit is max_n={max_n}")
