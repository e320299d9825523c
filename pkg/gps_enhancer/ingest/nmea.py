"""NMEA-0183 sentences reading and writing.

Only two sentence types are understood:

- GGA: position, fix quality and number of satellites used
- RMC: position, status, UTC time and date

A sentence looks like `$<talker><type>,<fields>*<hh>` where `hh` is the
XOR of all payload bytes (between '$' and '*'), in hexadecimal.
"""

import datetime
import decimal
import logging

from ..exceptions import (
    ChecksumError, GpsEnhancerError, InvalidArgumentError, NoFixError,
    ParseError, ValidationError)
from ..geodesy import GeoPosition
from .trace import GpsFix, Trace


logger = logging.getLogger(__name__)


SUPPORTED_TYPES = ('GGA', 'RMC')


def nmea_checksum(payload):
    """Compute the checksum of a sentence payload.

    :param bytes|str payload: Sentence content between '$' and '*'.
    :return str: The checksum, as two uppercase hexadecimal digits.
    :raises InvalidArgumentError: When `payload` contains '$' or '*'.
    """
    if isinstance(payload, str):
        payload = payload.encode('ascii')
    if b'$' in payload or b'*' in payload:
        raise InvalidArgumentError(
            'Invalid payload (contains "$" or "*"): {!r}'.format(payload))
    checksum = 0
    for cur_byte in payload:
        checksum ^= cur_byte
    return '{:02X}'.format(checksum)


def split_sentence(sentence):
    """Check a sentence and split its payload into fields.

    :param str sentence: A full sentence, line terminators allowed.
    :return list: The payload fields, the first one being the address
        (talker + sentence type, 'GPGGA' for example).
    :raises ParseError: When the sentence is not properly framed.
    :raises ChecksumError: When the checksum does not match the payload.
    """
    sentence = sentence.strip()
    if not sentence.startswith('$'):
        raise ParseError('Sentence must start with "$": {}'.format(sentence))
    payload, sep, checksum = sentence[1:].rpartition('*')
    if not sep or len(checksum) != 2:
        raise ParseError('Missing checksum: {}'.format(sentence))
    if '$' in payload or '*' in payload:
        raise ParseError('Misplaced "$" or "*": {}'.format(sentence))
    try:
        expected = nmea_checksum(payload)
    except UnicodeEncodeError:
        raise ParseError('Non ASCII sentence: {!r}'.format(sentence))
    if checksum.upper() != expected:
        raise ChecksumError(
            'Checksum mismatch: read {}, computed {} for {}'.format(
                checksum, expected, sentence))
    return payload.split(',')


def sentence_type(fields):
    """Get the sentence type of split fields ('GGA' for 'GPGGA')."""
    return fields[0][2:]


def _get_field(fields, index):
    try:
        return fields[index]
    except IndexError:
        raise ParseError(
            'Missing field {} in {}'.format(index, ','.join(fields)),
            field_index=index)


def _parse_coordinate(fields, index, deg_digits, hemispheres):
    # `ddmm.mmmm` (or `dddmm.mmmm`) value followed by its hemisphere letter
    value = _get_field(fields, index)
    hemisphere = _get_field(fields, index + 1)
    try:
        degrees = int(value[:deg_digits])
        minutes = float(value[deg_digits:])
    except ValueError:
        raise ParseError(
            'Invalid coordinate: "{}"'.format(value), field_index=index)
    if len(value) <= deg_digits or not 0 <= minutes < 60:
        raise ParseError(
            'Invalid coordinate: "{}"'.format(value), field_index=index)
    if hemisphere not in hemispheres:
        raise ParseError(
            'Invalid hemisphere: "{}"'.format(hemisphere),
            field_index=index + 1)
    # decimal arithmetic gives the correctly rounded degrees of the text
    coordinate = float(degrees + decimal.Decimal(value[deg_digits:]) / 60)
    if hemisphere == hemispheres[1]:
        coordinate = -coordinate
    return coordinate


def _parse_position(fields, lat_index):
    lat_deg = _parse_coordinate(fields, lat_index, 2, ('N', 'S'))
    lon_deg = _parse_coordinate(fields, lat_index + 2, 3, ('E', 'W'))
    try:
        return GeoPosition(lat_deg, lon_deg)
    except InvalidArgumentError as exc:
        raise ValidationError(str(exc), field_index=lat_index)


def _parse_time(fields, index):
    value = _get_field(fields, index)
    if value == '':
        return None
    try:
        seconds = float(value[4:])
        return datetime.time(
            int(value[:2]), int(value[2:4]), int(seconds),
            int(round((seconds % 1) * 1e6)) % 1000000,
            tzinfo=datetime.timezone.utc)
    except ValueError:
        raise ParseError(
            'Invalid UTC time: "{}"'.format(value), field_index=index)


def _check_type(fields, expected):
    if sentence_type(fields) != expected:
        raise ParseError(
            'Not a {} sentence: {}'.format(expected, fields[0]),
            field_index=0)


def parse_gga(sentence):
    """Parse a GGA sentence (any talker).

    :param str sentence: The full sentence.
    :return GpsFix: The fix, without record id (the caller assigns it).
    :raises ChecksumError: When the checksum does not match.
    :raises NoFixError: When the fix quality field is 0.
    :raises ParseError: When a field is malformed (see `field_index`).
    """
    fields = split_sentence(sentence)
    _check_type(fields, 'GGA')
    try:
        quality = int(_get_field(fields, 6))
    except ValueError:
        raise ParseError(
            'Invalid fix quality: "{}"'.format(fields[6]), field_index=6)
    if quality == 0:
        raise NoFixError('Receiver has no fix', field_index=6)
    try:
        satellites = int(_get_field(fields, 7))
    except ValueError:
        raise ParseError(
            'Invalid satellites count: "{}"'.format(fields[7]),
            field_index=7)
    if satellites < 0:
        raise ParseError(
            'Invalid satellites count: "{}"'.format(fields[7]),
            field_index=7)
    return GpsFix(
        None, _parse_position(fields, 2), satellites, _parse_time(fields, 1))


class RmcRecord:
    """Content of an RMC sentence.

    :param GeoPosition position: The reported position.
    :param datetime.datetime timestamp: UTC date and time (None when the
        sentence carries no time or date).
    """

    def __init__(self, position, timestamp):
        self.position = position
        self.timestamp = timestamp

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'position={self.position}'
            ', timestamp={self.timestamp}'
            ')'.format(self=self))

    @property
    def date(self):
        """Get the UTC date, if known."""
        if self.timestamp is None:
            return None
        return self.timestamp.date()


def parse_rmc(sentence):
    """Parse an RMC sentence (any talker).

    :param str sentence: The full sentence.
    :return RmcRecord: Position and UTC timestamp.
    :raises ChecksumError: When the checksum does not match.
    :raises NoFixError: When the status field is 'V' (void).
    :raises ParseError: When a field is malformed (see `field_index`).
    """
    fields = split_sentence(sentence)
    _check_type(fields, 'RMC')
    status = _get_field(fields, 2)
    if status == 'V':
        raise NoFixError('Receiver warning (void status)', field_index=2)
    if status != 'A':
        raise ParseError(
            'Invalid status: "{}"'.format(status), field_index=2)
    position = _parse_position(fields, 3)
    utc_time = _parse_time(fields, 1)
    raw_date = _get_field(fields, 9)
    timestamp = None
    if raw_date != '' and utc_time is not None:
        try:
            year = int(raw_date[4:6])
            year += 2000 if year < 80 else 1900
            date = datetime.date(year, int(raw_date[2:4]), int(raw_date[:2]))
        except ValueError:
            raise ParseError(
                'Invalid date: "{}"'.format(raw_date), field_index=9)
        timestamp = datetime.datetime.combine(date, utc_time)
    return RmcRecord(position, timestamp)


def _format_coordinate(value, deg_digits, hemispheres):
    hemisphere = hemispheres[0] if value >= 0 else hemispheres[1]
    value = abs(value)
    degrees = int(value)
    minutes = round((value - degrees) * 60, 6)
    if minutes >= 60:
        degrees += 1
        minutes -= 60
    return '{:0{width}d}{:09.6f},{}'.format(
        degrees, minutes, hemisphere, width=deg_digits)


def _format_time(timestamp):
    if timestamp is None:
        return ''
    return '{:02d}{:02d}{:02d}.{:02d}'.format(
        timestamp.hour, timestamp.minute, timestamp.second,
        timestamp.microsecond // 10000)


def format_gga(fix, *, talker='GP'):
    """Write a fix as a GGA sentence (without line terminator).

    Minutes are written with 6 decimals, finer than 1e-7 degree.

    :param GpsFix fix: The fix to write.
    :param str talker: (optional, default 'GP') The talker identifier.
    :return str: The sentence, checksum included.
    """
    payload = ','.join((
        '{}GGA'.format(talker),
        _format_time(fix.timestamp),
        _format_coordinate(fix.position.lat_deg, 2, ('N', 'S')),
        _format_coordinate(fix.position.lon_deg, 3, ('E', 'W')),
        '1',
        '{:02d}'.format(fix.satellites),
        '', '', 'M', '', 'M', '', '',
    ))
    return '${}*{}'.format(payload, nmea_checksum(payload))


class NmeaTraceReader:
    """Build a trace from NMEA sentences, one line at a time.

    GGA sentences become fixes, numbered by arrival order from 0. RMC
    sentences only provide the UTC date of the following GGA timestamps.
    Other sentence types are skipped and counted. Corrupted sentences
    (bad framing, checksum or field) and sentences without fix are counted
    too; they raise instead when `strict` is set.

    :param GeoPosition reference: Ground-truth position of the trace.
    :param str label: (optional, default '') The trace label.
    :param bool strict: (optional, default False)
        Raise on corrupted sentences instead of skipping them.
    """

    def __init__(self, reference, label='', *, strict=False):
        self.reference = reference
        self.label = label
        self.strict = strict
        self.fixes = []
        self.skipped = 0
        self.corrupted = 0
        self.no_fix = 0
        self._date = None

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'fixes_count={fixes_count}'
            ', skipped={self.skipped}'
            ', corrupted={self.corrupted}'
            ', no_fix={self.no_fix}'
            ')'.format(self=self, fixes_count=len(self.fixes)))

    @property
    def trace(self):
        """Get the trace of fixes read so far."""
        return Trace(self.fixes, self.reference, self.label)

    def feed(self, line):
        """Read one line.

        :param bytes|str line: The sentence, line terminators allowed.
        :return GpsFix: The new fix, or None when the line gave no fix.
        """
        try:
            if isinstance(line, bytes):
                line = line.decode('ascii')
            if line.strip() == '':
                return None
            fields = split_sentence(line)
            cur_type = sentence_type(fields)
            if cur_type == 'GGA':
                return self._add_fix(parse_gga(line))
            if cur_type == 'RMC':
                self._date = parse_rmc(line).date or self._date
                return None
        except NoFixError:
            self.no_fix += 1
            if self.strict:
                raise
            logger.info('Sentence without fix: %s', line.strip())
            return None
        except (GpsEnhancerError, UnicodeDecodeError) as exc:
            if self.strict:
                if isinstance(exc, UnicodeDecodeError):
                    raise ParseError('Non ASCII sentence: {!r}'.format(line))
                raise
            self.corrupted += 1
            logger.warning(
                'Corrupted sentence skipped (%d so far): %s',
                self.corrupted, exc)
            return None

        self.skipped += 1
        logger.warning(
            'Unsupported %s sentence skipped (%d so far)',
            cur_type, self.skipped)
        return None

    def _add_fix(self, fix):
        timestamp = fix.timestamp
        if timestamp is not None and self._date is not None:
            timestamp = datetime.datetime.combine(self._date, timestamp)
        fix = GpsFix(
            len(self.fixes), fix.position, fix.satellites, timestamp)
        self.fixes.append(fix)
        return fix

    def read(self, lines):
        """Read all `lines` and get the resulting trace.

        :param iterable lines: Sentences (bytes or str).
        :return Trace: The trace of all fixes read.
        """
        for line in lines:
            self.feed(line)
        return self.trace


def read_nmea_trace(lines, reference, label='', *, strict=False):
    """Build a trace from NMEA sentences (see `NmeaTraceReader`).

    :param iterable lines: Sentences (bytes or str).
    :param GeoPosition reference: Ground-truth position of the trace.
    :param str label: (optional, default '') The trace label.
    :param bool strict: (optional, default False)
        Raise on corrupted sentences instead of skipping them.
    :return Trace: The trace of all fixes read.
    """
    return NmeaTraceReader(reference, label, strict=strict).read(lines)
