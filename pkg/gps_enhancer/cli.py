"""Command line interface.

    gps-enhancer analyze --dataset clear_weather
    gps-enhancer filter --input trace.csv --ref 39.9525646,32.7966589 \\
        --kind average --output filtered.csv
    gps-enhancer geojson --dataset clear_weather --output overlay.geojson
    gps-enhancer replay --dataset clear_weather --listen 127.0.0.1:10110
    gps-enhancer track --connect 127.0.0.1:10110 \\
        --ref 39.9525646,32.7966589 --sink live.csv
"""

import argparse
import logging
import os
import sys
from pathlib import Path

from .datasets import DATASETS, load_dataset, read_sidecar, read_trace_file
from .exceptions import (
    GpsEnhancerError, InputFileError, InvalidArgumentError)
from .filters import DEFAULT_P0, DEFAULT_R, FilterKind, FilterParams
from .geodesy import GeoPosition
from .ingest import Trace, read_nmea_trace, write_trace_csv
from .report import (
    build_bundle, to_comparison_table, to_geojson, to_positions_csv,
    to_series_csv)
from .stream import (
    DEFAULT_RATE_HZ, ReplayConfig, SeriesCsvSink, TrackSession, replay_serve,
    track_live)
from .tools import parse_endpoint, parse_position_pair


logger = logging.getLogger(__name__)


LOG_LEVEL_ENV = 'GPS_ENHANCER_LOG_LEVEL'
NMEA_SUFFIXES = ('.nmea', '.log', '.txt')
ALL_KINDS = 'all'

EXIT_OK = 0
EXIT_UNEXPECTED = 1

EXIT_CODES_HELP = """exit codes:
  0  success
  1  unexpected error
  2  usage error (unknown flag, missing option)
  3  invalid argument (out of range coordinate, bad filter parameter...)
  4  empty input (no fix to analyze, misaligned series)
  5  parse error (CSV schema or row, NMEA sentence)
  6  network error (cannot listen, cannot connect, timeout)
  7  missing input file

environment:
  {}  log verbosity (DEBUG, INFO, WARNING...), default WARNING
""".format(LOG_LEVEL_ENV)


def _add_input_arguments(parser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument(
        '--input', type=Path, help='trace file (CSV, or NMEA log)')
    source.add_argument(
        '--dataset', choices=sorted(DATASETS), help='bundled trace')
    parser.add_argument(
        '--ref', help=(
            'reference position "lat,lon", dot decimals, required without '
            'sidecar metadata (write --ref=-LAT,LON when negative)'))
    parser.add_argument(
        '--format', choices=('csv', 'nmea'),
        help='input format (default: from the file suffix)')
    parser.add_argument(
        '--usable-only', action='store_true',
        help='exclude fixes seen by less than 3 satellites')


def _add_filter_arguments(parser, *, default_kind, allow_all):
    choices = [kind.value for kind in FilterKind]
    if allow_all:
        choices.append(ALL_KINDS)
    parser.add_argument(
        '--kind', choices=choices, default=default_kind,
        help='filter to apply (default: %(default)s)')
    parser.add_argument(
        '--r', type=float, default=DEFAULT_R,
        help='measurement standard deviation (default: %(default)s)')
    parser.add_argument(
        '--p0', type=float, default=DEFAULT_P0,
        help='initial error covariance (default: %(default)s)')


def _add_output_argument(parser, help_text):
    parser.add_argument(
        '--output', type=Path, help='{} (default: stdout)'.format(help_text))


def build_parser():
    """Build the command line parser."""
    parser = argparse.ArgumentParser(
        prog='gps-enhancer',
        description='Filter GPS traces and measure their error margins.',
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    subparsers = parser.add_subparsers(dest='subcommand', metavar='command')
    subparsers.required = True

    sub = subparsers.add_parser(
        'ingest', help='convert a trace to the canonical CSV format',
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_input_arguments(sub)
    _add_output_argument(sub, 'canonical CSV file')

    sub = subparsers.add_parser(
        'filter', help='write filtered positions as a CSV trace',
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_input_arguments(sub)
    _add_filter_arguments(
        sub, default_kind=FilterKind.KALMAN.value, allow_all=False)
    _add_output_argument(sub, 'filtered CSV file')

    sub = subparsers.add_parser(
        'analyze', help='compare receiver and filters error margins',
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_input_arguments(sub)
    _add_filter_arguments(sub, default_kind=ALL_KINDS, allow_all=True)
    _add_output_argument(sub, 'comparison table file')
    sub.add_argument(
        '--series-output', type=Path,
        help='error series CSV file (plot data)')

    sub = subparsers.add_parser(
        'geojson', help='write the GeoJSON map overlay',
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_input_arguments(sub)
    _add_filter_arguments(sub, default_kind=ALL_KINDS, allow_all=True)
    _add_output_argument(sub, 'GeoJSON file')

    sub = subparsers.add_parser(
        'replay', help='serve a trace as NMEA sentences over TCP',
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_input_arguments(sub)
    sub.add_argument(
        '--listen', default='127.0.0.1:10110',
        help='listening endpoint host:port (default: %(default)s)')
    sub.add_argument(
        '--rate', type=float, default=DEFAULT_RATE_HZ,
        help='sentences per second (default: %(default)s)')
    sub.add_argument(
        '--loop', action='store_true', help='replay the trace forever')

    sub = subparsers.add_parser(
        'track', help='filter a live NMEA stream',
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub.add_argument(
        '--connect', default='127.0.0.1:10110',
        help='replay server endpoint host:port (default: %(default)s)')
    sub.add_argument(
        '--ref', required=True, help='reference position "lat,lon"')
    _add_filter_arguments(
        sub, default_kind=FilterKind.KALMAN.value, allow_all=False)
    sub.add_argument(
        '--sink', type=Path,
        help='error series CSV file, appended to after each fix')
    _add_output_argument(sub, 'final comparison table file')
    sub.add_argument(
        '--timeout', type=float, default=30.0,
        help='connection and read timeout in seconds (default: %(default)s)')

    return parser


def _reference(config):
    if config.ref is None:
        return None
    return GeoPosition(*parse_position_pair(config.ref))


def _params_list(config):
    if config.kind == ALL_KINDS:
        kinds = list(FilterKind)
    else:
        kinds = [FilterKind(config.kind)]
    return [FilterParams(config.r, config.p0, kind) for kind in kinds]


def _input_format(config):
    if config.format is not None:
        return config.format
    if config.input.suffix.lower() in NMEA_SUFFIXES:
        return 'nmea'
    return 'csv'


def load_trace(config):
    """Load the trace designated by the input arguments.

    :param argparse.Namespace config: Parsed arguments.
    :return Trace: The trace, restricted to usable fixes on request.
    """
    reference = _reference(config)
    if config.dataset is not None:
        trace = load_dataset(config.dataset)
        if reference is not None:
            trace = Trace(trace.fixes, reference, trace.label)
    elif _input_format(config) == 'nmea':
        if not config.input.is_file():
            raise InputFileError('Invalid filename: {}'.format(config.input))
        sidecar_reference, label = read_sidecar(config.input)
        reference = reference or sidecar_reference
        if reference is None:
            raise InvalidArgumentError(
                'No reference position for {} (use --ref)'.format(
                    config.input))
        with open(str(config.input), 'rb') as nmea_file:
            trace = read_nmea_trace(nmea_file, reference, label)
    else:
        trace = read_trace_file(config.input, reference=reference)

    if config.usable_only:
        trace = trace.usable_trace()
    logger.info('Loaded %s', trace)
    return trace


def _write_output(text, path):
    if path is None or str(path) == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(str(path), 'w', encoding='utf-8', newline='') as out_file:
        out_file.write(text)
    logger.info('Wrote %s', path)


def _run_ingest(config):
    _write_output(write_trace_csv(load_trace(config)), config.output)


def _run_filter(config):
    params = _params_list(config)[0]
    bundle = build_bundle(load_trace(config), [params])
    _write_output(to_positions_csv(bundle, params.label), config.output)


def _run_analyze(config):
    bundle = build_bundle(load_trace(config), _params_list(config))
    if config.series_output is not None:
        _write_output(to_series_csv(bundle), config.series_output)
    _write_output(to_comparison_table(bundle), config.output)


def _run_geojson(config):
    bundle = build_bundle(load_trace(config), _params_list(config))
    _write_output(to_geojson(bundle), config.output)


def _run_replay(config):
    replay_config = ReplayConfig(
        config.rate, config.loop, parse_endpoint(config.listen))
    try:
        replay_serve(load_trace(config), replay_config)
    except KeyboardInterrupt:
        logger.info('Replay interrupted')


def _run_track(config):
    session = TrackSession(
        parse_endpoint(config.connect), _params_list(config)[0],
        _reference(config), timeout=config.timeout)
    if config.sink is None:
        bundle = track_live(session)
    else:
        with open(str(config.sink), 'w', encoding='utf-8',
                  newline='') as sink_file:
            bundle = track_live(
                session, SeriesCsvSink(sink_file, session.series_labels))
    _write_output(to_comparison_table(bundle), config.output)


_COMMANDS = {
    'ingest': _run_ingest,
    'filter': _run_filter,
    'analyze': _run_analyze,
    'geojson': _run_geojson,
    'replay': _run_replay,
    'track': _run_track,
}


def configure_logging():
    """Configure the root logger from the environment."""
    level_name = os.environ.get(LOG_LEVEL_ENV, 'WARNING').upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format='%(asctime)s %(levelname)s %(name)s: %(message)s')


def run(config):
    """Run a parsed command line.

    :param argparse.Namespace config: Parsed arguments.
    :return int: The process exit status.
    """
    try:
        _COMMANDS[config.subcommand](config)
    except GpsEnhancerError as exc:
        sys.stderr.write('gps-enhancer: error: {}\n'.format(exc))
        return exc.exit_code
    except Exception:
        logger.exception('Unexpected error')
        return EXIT_UNEXPECTED
    return EXIT_OK


def main(argv=None):
    """Console script entry point.

    :param list argv: (optional, default None) Arguments, sys.argv if None.
    :return int: The process exit status.
    """
    configure_logging()
    parser = build_parser()
    try:
        config = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    return run(config)


if __name__ == '__main__':
    sys.exit(main())
