"""
GPS trace enhancement

The main goal of this package is to reduce the positional error of GPS
receiver fixes with simple post-processing filters, and to measure that
error against a known reference position.

- geodesy:
    `GeoPosition` latitude/longitude pairs
    `haversine_distance`, great-circle distance on a spherical Earth

- ingest:
    `GpsFix` and `Trace` (fixes + reference position)
    NMEA-0183 GGA/RMC sentences reading and GGA writing
    CSV trace files reading and writing

- filters:
    Scalar Kalman and cumulative average filters, as state machines
    `filter_trace` applies them on latitude and longitude separately

- analysis:
    Error margin series, summaries (final, minimum) and improvement rates

- report:
    `ReportBundle`, GeoJSON map overlay, error series CSV,
    comparison table

- stream:
    `ReplayServer`, serving a trace as live NMEA sentences over TCP
    `track_live`, filtering such a stream as fixes arrive

- datasets:
    Bundled traces (`load_dataset('clear_weather')`)
"""

from .geodesy import GeoPosition, haversine_distance  # noqa
from .filters import (  # noqa
    FilterKind, FilterParams, KalmanState, AverageState, kalman_init,
    kalman_step, average_step, filter_trace)
from .ingest import (  # noqa
    GpsFix, Trace, nmea_checksum, parse_gga, parse_rmc, format_gga,
    parse_trace_csv, write_trace_csv)
from .analysis import (  # noqa
    ErrorSeries, ErrorSummary, error_series, summarize, improvement_rate)
from .report import (  # noqa
    ReportBundle, build_bundle, to_geojson, to_series_csv)
from .stream import (  # noqa
    ReplayConfig, ReplayServer, TrackSession, replay_serve, track_live)
from .datasets import load_dataset  # noqa
