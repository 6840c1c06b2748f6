"""Exception types shared across the pipeline."""


class MnelmError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(MnelmError):
    """A configuration value is missing, malformed, or out of range."""


class FormatError(MnelmError):
    """A data file violates its documented format.

    ``line`` is the 1-based line number of the offending record when known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class LabelError(MnelmError):
    """An entity label outside the closed label set."""

    def __init__(self, label):
        super().__init__(f"unknown entity label: {label!r}")
        self.label = label


class SpanError(MnelmError):
    """An entity span is empty, out of bounds, or overlaps another span."""


class MissingSummary(MnelmError):
    """A document that must carry a reference summary does not."""


class EmptyCorpus(MnelmError):
    """An operation that needs at least one document got none."""


class EmptyDataset(MnelmError):
    """An operation that needs at least one example got none."""


class LengthMismatch(MnelmError):
    """Two aligned sequences have different lengths."""


class MissingCheckpoint(MnelmError):
    """A pipeline stage requires a checkpoint that has not been produced."""

    def __init__(self, path, hint=""):
        message = f"missing checkpoint: {path}"
        if hint:
            message += f" ({hint})"
        super().__init__(message)
        self.path = str(path)
