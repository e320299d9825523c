"""GPS enhancer errors.

Every error carries the process exit code the command line maps it to.
Concrete classes also inherit the builtin that matches their nature
(`ValueError` for bad values, `OSError` for I/O), so callers can catch
either.
"""


class GpsEnhancerError(Exception):
    """Base class of all gps-enhancer errors."""

    exit_code = 1


class InvalidArgumentError(GpsEnhancerError, ValueError):
    """A value is outside of its domain (non finite, out of range...)."""

    exit_code = 3


class InvalidParameterError(InvalidArgumentError):
    """A filter parameter is not valid (non positive r or p0...)."""


class EmptyInputError(GpsEnhancerError, ValueError):
    """An operation needing data received none."""

    exit_code = 4


class ShapeError(GpsEnhancerError, ValueError):
    """Two series that must be aligned do not have the same length."""

    exit_code = 4


class ParseError(GpsEnhancerError, ValueError):
    """Input data could not be parsed.

    :param str message: The error description.
    :param int field_index: (optional, default None)
        Index of the faulty field in an NMEA sentence.
    :param int row: (optional, default None)
        Number of the faulty row in a CSV file (header is row 1).
    """

    exit_code = 5

    def __init__(self, message, *, field_index=None, row=None):
        super().__init__(message)
        self.field_index = field_index
        self.row = row


class ChecksumError(ParseError):
    """An NMEA sentence checksum does not match its payload."""


class NoFixError(ParseError):
    """An NMEA sentence reports that the receiver has no position fix."""


class SchemaError(ParseError):
    """A CSV header misses a required column."""


class ValidationError(ParseError):
    """A parsed coordinate is out of its valid range."""


class StreamError(GpsEnhancerError, OSError):
    """Network stream failure."""

    exit_code = 6


class StartupError(StreamError):
    """The replay server could not bind its endpoint."""


class ConnectError(StreamError):
    """The live tracker could not reach the replay server."""


class InputFileError(GpsEnhancerError, OSError):
    """An input file does not exist or cannot be read."""

    exit_code = 7
