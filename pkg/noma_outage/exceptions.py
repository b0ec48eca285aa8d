"""Exception hierarchy shared by the library and the command-line front end."""

from typing import Iterable


class NomaOutageError(Exception):
    """Base class for toolkit errors"""


class ConfigError(NomaOutageError):
    """Invalid experiment or system configuration"""

    def __init__(self, message: str, fields: Iterable[str] = ()):
        self.fields = tuple(fields)
        if self.fields:
            message = f"{message} (fields: {', '.join(self.fields)})"
        super().__init__(message)


class NonConvergenceError(NomaOutageError):
    """Adaptive integration hit its subdivision limit"""


class OutputError(NomaOutageError):
    """Result files could not be written"""

