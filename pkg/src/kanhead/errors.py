"""Exception hierarchy shared across the package."""


class KanheadError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(KanheadError):
    """An argument lies outside the mathematical domain of an operation."""


class ShapeError(KanheadError):
    """Tensor shapes are inconsistent with the operation's contract."""


class NumericError(KanheadError):
    """A NaN or Inf appeared where finite values are required."""


class FormatError(KanheadError):
    """An on-disk file does not conform to its declared format."""


class LabelError(KanheadError):
    """A class label is outside the valid range."""


class IoError(KanheadError):
    """An underlying I/O operation failed."""


class StaleCacheError(KanheadError):
    """A forward cache does not match the layer it is replayed against."""


class MismatchError(KanheadError):
    """Two experiment arms disagree on dataset or seed."""
