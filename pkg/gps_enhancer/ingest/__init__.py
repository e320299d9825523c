"""Position data reading: NMEA sentences and CSV trace files."""

from .trace import GpsFix, Trace, MIN_SATELLITES  # noqa
from .nmea import (  # noqa
    nmea_checksum, split_sentence, sentence_type, parse_gga, parse_rmc,
    format_gga, RmcRecord, NmeaTraceReader, read_nmea_trace)
from .csv_trace import (  # noqa
    parse_trace_csv, write_trace_csv, CSV_HEADER)
