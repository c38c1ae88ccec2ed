"""
Named errors raised across the optimizer, the feeder simulation and the harness.

The CLI maps ConfigurationError (and subclasses) to exit code 2 and
SimulationError (and subclasses) to exit code 3.
"""

from typing import Optional, Sequence


class FeederError(Exception):
    """Base class for every error raised by this package"""


class ConfigurationError(FeederError, ValueError):
    """Invalid run options, network/vector dimension mismatch, empty switch set"""


class NetworkLoadError(ConfigurationError):
    """A network file could not be turned into a NetworkModel"""

    def __init__(self, message: str, path: Optional[str] = None):
        super().__init__(message)
        self.path = path


class NetworkFileNotFoundError(NetworkLoadError, FileNotFoundError):
    """The network file does not exist or is not a regular file"""


class NetworkParseError(NetworkLoadError):
    """Malformed JSON or a field that does not match the network schema"""

    def __init__(self, message: str, path: Optional[str] = None,
                 line: Optional[int] = None, column: Optional[int] = None,
                 field: Optional[str] = None):
        super().__init__(message, path)
        self.line = line
        self.column = column
        self.field = field


class NetworkValidationError(NetworkLoadError):
    """The network parsed but breaks a model invariant"""

    def __init__(self, message: str, offending_id=None, path: Optional[str] = None):
        super().__init__(message, path)
        self.offending_id = offending_id


class EnumerationLimitError(ConfigurationError):
    """Exhaustive enumeration requested for too many switches"""


class SimulationError(FeederError, RuntimeError):
    """A feeder-simulation precondition was broken"""


class EvaluatorError(SimulationError):
    """The black-box evaluator failed on a candidate"""

    def __init__(self, message: str, candidate: Sequence[int]):
        super().__init__(message)
        self.candidate = tuple(candidate)


class FrontierExhaustedError(FeederError):
    """Every frontier entry has been polled without improvement"""
