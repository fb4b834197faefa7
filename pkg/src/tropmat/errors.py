"""Exception hierarchy shared by all tropmat modules."""


class TropmatError(Exception):
    """Base class for every error raised by tropmat."""


class InvalidType(TropmatError, ValueError):
    pass


class EmptyEntry(InvalidType):
    pass


class OutOfRange(InvalidType):
    pass


class LengthMismatch(InvalidType):
    pass


class ParameterMismatch(TropmatError, ValueError):
    """Two objects with different (n, d) were combined."""


class InvalidParameters(TropmatError, ValueError):
    pass


class LimitExceeded(TropmatError):
    """An enumeration would exceed a documented size cap."""


class NotSubset(TropmatError, ValueError):
    pass


class NotMember(TropmatError, ValueError):
    pass


class NotTotal(TropmatError, ValueError):
    pass


class NotFullDim(TropmatError, ValueError):
    pass


class NotATom(TropmatError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class EmptyInput(TropmatError, ValueError):
    pass


class UnsupportedDimension(TropmatError, ValueError):
    pass


class DimensionMismatch(TropmatError, ValueError):
    pass


class InvalidSubdivision(TropmatError, ValueError):
    pass
