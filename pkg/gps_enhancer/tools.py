"""A toolbox."""

import math

from .exceptions import InvalidArgumentError


def parse_decimal(str_in):
    """Parse a decimal number written with a dot or a comma separator.

    The comma form is the one of the Turkish locale ("39,953250").

    :param str str_in: The text to parse.
    :return float: The parsed value.
    :raises ValueError: When `str_in` is not a decimal number.
    """
    if str_in is None:
        raise ValueError('Invalid decimal: None')
    cleaned = str_in.strip()
    if cleaned.count(',') == 1 and '.' not in cleaned:
        cleaned = cleaned.replace(',', '.')
    return float(cleaned)


def check_finite(value, *, name='value'):
    """Ensure `value` is a finite real number.

    :param float value: The value to check.
    :param str name: (optional, default 'value') Name used in the message.
    :return float: `value` converted to float.
    :raises InvalidArgumentError: When `value` is not a finite number.
    """
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidArgumentError('Invalid {}: {!r}'.format(name, value))
    if not math.isfinite(value):
        raise InvalidArgumentError('Non finite {}: {}'.format(name, value))
    return value


def parse_endpoint(str_in, *, default_host='127.0.0.1'):
    """Parse a `host:port` endpoint.

    :param str str_in: The endpoint text, `host:port` or `:port`.
    :param str default_host: (optional, default '127.0.0.1')
        Host used when `str_in` only gives a port.
    :return tuple: (host, port)
    :raises InvalidArgumentError: When the port is not an integer in range.
    """
    host, sep, port = str_in.rpartition(':')
    if not sep:
        host, port = '', str_in
    try:
        port = int(port)
    except ValueError:
        raise InvalidArgumentError('Invalid endpoint: {}'.format(str_in))
    if not 0 <= port <= 65535:
        raise InvalidArgumentError('Invalid port: {}'.format(port))
    return (host or default_host, port)


def parse_position_pair(str_in):
    """Parse a `lat,lon` pair written with dot decimals.

    :param str str_in: The text, for example '39.9525646,32.7966589'.
    :return tuple: (lat_deg, lon_deg) as floats.
    :raises InvalidArgumentError: When the text is not a pair of numbers.
    """
    parts = str_in.split(',')
    if len(parts) != 2:
        raise InvalidArgumentError(
            'Invalid position (expected "lat,lon"): {}'.format(str_in))
    try:
        return tuple(float(part) for part in parts)
    except ValueError:
        raise InvalidArgumentError('Invalid position: {}'.format(str_in))
