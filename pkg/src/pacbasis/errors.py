"""Exception types raised by pacbasis."""


class PacBasisError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(PacBasisError, ValueError):
    """An argument is out of range or belongs to a different attribute universe."""


class CapacityError(PacBasisError):
    """An exhaustive scan over 2**|M| subsets would exceed the enumeration cap."""

    def __init__(self, size, cap, hint=None):
        self.size = size
        self.cap = cap
        msg = f"{size} attributes exceed the enumeration cap of {cap}"
        if hint:
            msg = f"{msg}; {hint}"
        super().__init__(msg)


class ContextParseError(PacBasisError, ValueError):
    """Malformed context or implication file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ProtocolError(PacBasisError):
    """An oracle answered inconsistently with the learning protocol."""

    def __init__(self, message, counterexample=None):
        self.counterexample = counterexample
        super().__init__(message)


class GenerationExhaustedError(PacBasisError):
    """Random generation gave up before producing enough accepted contexts."""
