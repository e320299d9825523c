"""CSV trace files reading and writing.

Canonical format: comma delimiter, dot decimals, LF line endings and the
header `record_id,latitude,longitude,satellites,error_margin_m`.

Comma decimals ("39,953250") are accepted when the file is semicolon
delimited or when the field is quoted.
"""

import csv
import io

from ..exceptions import (
    InvalidArgumentError, ParseError, SchemaError, ValidationError)
from ..geodesy import GeoPosition
from ..tools import parse_decimal
from .trace import GpsFix, Trace


REQUIRED_COLUMNS = ('record_id', 'latitude', 'longitude', 'satellites')
OPTIONAL_COLUMNS = ('error_margin_m',)
CSV_HEADER = REQUIRED_COLUMNS + OPTIONAL_COLUMNS


def _to_text(content):
    if isinstance(content, bytes):
        try:
            return content.decode('utf-8-sig')
        except UnicodeDecodeError as exc:
            raise ParseError(
                'Invalid UTF-8 content at byte {}'.format(exc.start),
                row=content.count(b'\n', 0, exc.start) + 1)
    if isinstance(content, str):
        return content
    return _to_text(content.read())


def _parse_row(row, row_num):
    def _read(column, convert):
        value = (row.get(column) or '').strip()
        try:
            return convert(value)
        except ValueError:
            raise ParseError(
                'Row {}: invalid {} "{}"'.format(row_num, column, value),
                row=row_num)

    if None in row:
        raise ParseError(
            'Row {}: too many fields (unquoted comma decimal?)'.format(
                row_num), row=row_num)
    record_id = _read('record_id', int)
    lat_deg = _read('latitude', parse_decimal)
    lon_deg = _read('longitude', parse_decimal)
    satellites = _read('satellites', int)
    error_margin = None
    if (row.get('error_margin_m') or '').strip() != '':
        error_margin = _read('error_margin_m', parse_decimal)

    try:
        position = GeoPosition(lat_deg, lon_deg)
        return GpsFix(
            record_id, position, satellites, reported_error_m=error_margin)
    except InvalidArgumentError as exc:
        raise ValidationError(
            'Row {}: {}'.format(row_num, exc), row=row_num)


def parse_trace_csv(content, reference, label=''):
    """Read a trace from CSV content.

    :param bytes|str|file content: UTF-8 CSV content, or a file object.
    :param GeoPosition reference: Ground-truth position of the trace.
    :param str label: (optional, default '') The trace label.
    :return Trace: One fix per data row (possibly none).
    :raises SchemaError: When a required column is missing.
    :raises ParseError: When a row holds an unparsable value (see `row`).
        or when the content is not valid UTF-8.
    :raises ValidationError: When a row holds an out of range coordinate.
    """
    text = _to_text(content)
    header_line = text.split('\n', 1)[0]
    delimiter = ';' if ';' in header_line else ','
    reader = csv.DictReader(io.StringIO(text), delimiter=delimiter)

    columns = [name.strip() for name in reader.fieldnames or ()]
    missing = [name for name in REQUIRED_COLUMNS if name not in columns]
    if missing:
        raise SchemaError(
            'Missing required column(s): {}'.format(', '.join(missing)),
            row=1)
    reader.fieldnames = columns

    fixes = []
    # header is row 1
    for row_num, row in enumerate(reader, start=2):
        if not any((value or '').strip() for value in row.values()
                   if isinstance(value, str)):
            continue
        fix = _parse_row(row, row_num)
        if fixes and fix.record_id <= fixes[-1].record_id:
            raise ParseError(
                'Row {}: record id {} does not follow {}'.format(
                    row_num, fix.record_id, fixes[-1].record_id),
                row=row_num)
        fixes.append(fix)
    return Trace(fixes, reference, label)


def write_trace_csv(trace):
    """Write a trace in the canonical CSV format.

    :param Trace trace: The trace to write.
    :return str: The CSV content.
    """
    output = io.StringIO()
    writer = csv.writer(output, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    for fix in trace.fixes:
        error_margin = ''
        if fix.reported_error_m is not None:
            error_margin = '{:.2f}'.format(fix.reported_error_m)
        writer.writerow((
            fix.record_id,
            '{:.6f}'.format(fix.position.lat_deg),
            '{:.6f}'.format(fix.position.lon_deg),
            fix.satellites,
            error_margin,
        ))
    return output.getvalue()
