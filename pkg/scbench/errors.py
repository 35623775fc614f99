# Exception hierarchy shared by the library and the CLI


class ScBenchError(Exception):
    """Base class for every error raised by scbench."""


class InvalidArgumentError(ScBenchError, ValueError):
    """Input data violates an operation precondition (empty buffer, NaN, ...)."""


class UnsupportedSizeError(InvalidArgumentError):
    """Transform size not supported by the chosen algorithm."""


class InvalidSpecError(InvalidArgumentError):
    """SymbolSpec / vector-block arrangement is inconsistent."""


class InvalidConfigError(ScBenchError, ValueError):
    """Benchmark or command-line configuration is invalid."""


class SampleFormatError(ScBenchError, ValueError):
    """A sample file could not be parsed."""
