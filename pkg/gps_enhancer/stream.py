"""Live GPS stream: a replay server and a live tracking client.

The replay server impersonates a GPS receiver: each client connection gets
the GGA sentences of a trace, CRLF terminated, at a fixed rate. The live
tracker reads such a stream, filters each fix as it arrives and reports
the instantaneous error margins to a sink.
"""

import logging
import socket
import threading
import time

from .exceptions import (
    ConnectError, EmptyInputError, InvalidArgumentError, StartupError,
    StreamError)
from .filters import FilterParams, PositionFilter
from .geodesy import haversine_distance
from .ingest import NmeaTraceReader, format_gga
from .analysis import RECEIVER_LABEL
from .report import ReportBundle, format_series_row, series_csv_header


logger = logging.getLogger(__name__)


DEFAULT_RATE_HZ = 1.0
DEFAULT_ENDPOINT = ('127.0.0.1', 10110)
DEFAULT_SEND_TIMEOUT_S = 10.0


class ReplayConfig:
    """Replay server configuration.

    :param float rate_hz: (optional, default 1) Sentences per second.
    :param bool loop_forever: (optional, default False)
        Restart from the first fix after the last one.
    :param tuple listen_endpoint: (optional, default ('127.0.0.1', 10110))
        (host, port) to listen on, port 0 picks a free port.
    :param float send_timeout_s: (optional, default 10)
        A session ends when a client stops reading for that long.
    :raises InvalidArgumentError:
        When `rate_hz` or `send_timeout_s` is not positive.
    """

    def __init__(self, rate_hz=DEFAULT_RATE_HZ, loop_forever=False,
                 listen_endpoint=DEFAULT_ENDPOINT,
                 send_timeout_s=DEFAULT_SEND_TIMEOUT_S):
        try:
            rate_hz = float(rate_hz)
        except (TypeError, ValueError):
            raise InvalidArgumentError('Invalid rate: {!r}'.format(rate_hz))
        if not rate_hz > 0 or rate_hz == float('inf'):
            raise InvalidArgumentError(
                'Invalid rate: {} (must be positive)'.format(rate_hz))
        self.rate_hz = rate_hz
        self.loop_forever = loop_forever
        self.listen_endpoint = tuple(listen_endpoint)
        if not isinstance(send_timeout_s, (int, float)) or (
                not send_timeout_s > 0):
            raise InvalidArgumentError(
                'Invalid send timeout: {!r}'.format(send_timeout_s))
        self.send_timeout_s = send_timeout_s

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'rate_hz={self.rate_hz}'
            ', loop_forever={self.loop_forever}'
            ', listen_endpoint={self.listen_endpoint}'
            ')'.format(self=self))

    @property
    def period_s(self):
        """Get the delay between two sentences, in seconds."""
        return 1 / self.rate_hz


class ReplayServer:
    """TCP server streaming a trace as GGA sentences to each client.

    Every client is served in its own thread and gets the whole trace from
    its first fix. Without `loop_forever` the replay ends once a session
    has sent the last fix: later clients are closed without any sentence.

    :param Trace trace: The trace to replay (at least one fix).
    :param ReplayConfig config: The server configuration.
    :param threading.Event stop_event: (optional, default None)
        Serving stops once it is set (see `stop`).
    :raises EmptyInputError: When the trace has no fix.
    """

    def __init__(self, trace, config, stop_event=None):
        if len(trace) == 0:
            raise EmptyInputError('Cannot replay an empty trace')
        self.trace = trace
        self.config = config
        self.sessions_count = 0
        self._sentences = tuple(
            (format_gga(fix) + '\r\n').encode('ascii')
            for fix in trace.fixes)
        self._socket = None
        self._accept_thread = None
        self._session_threads = []
        if stop_event is None:
            stop_event = threading.Event()
        self._stop_event = stop_event
        self._finished = threading.Event()

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'config={self.config}'
            ', sessions_count={self.sessions_count}'
            ')'.format(self=self))

    def __enter__(self):
        return self.start()

    def __exit__(self, *args):
        self.stop()

    @property
    def server_address(self):
        """Get the bound (host, port), None before binding."""
        if self._socket is None:
            return None
        return self._socket.getsockname()[:2]

    @property
    def active_sessions_count(self):
        """Get the number of sessions still sending sentences."""
        return sum(
            1 for cur_thread in tuple(self._session_threads)
            if cur_thread.is_alive())

    @property
    def finished(self):
        """True once a non looping replay has sent its last fix."""
        return self._finished.is_set()

    def bind(self):
        """Bind and listen on the configured endpoint.

        :raises StartupError: When the endpoint cannot be bound.
        """
        if self._socket is not None:
            return
        try:
            self._socket = socket.create_server(self.config.listen_endpoint)
        except OSError as exc:
            raise StartupError('Cannot listen on {}:{}: {}'.format(
                *self.config.listen_endpoint, exc))
        # allows the accept loop to check for a stop request
        self._socket.settimeout(0.2)
        logger.info('Replay server listening on %s:%d', *self.server_address)

    def start(self):
        """Bind and serve in a background thread.

        :return ReplayServer: self
        """
        self.bind()
        self._accept_thread = threading.Thread(
            target=self._accept_loop, name='replay-accept', daemon=True)
        self._accept_thread.start()
        return self

    def serve_forever(self):
        """Bind and serve in the current thread, until `stop` is called."""
        self.bind()
        self._accept_loop()

    def stop(self):
        """Stop serving: close the listening socket and all sessions."""
        self._stop_event.set()
        if self._accept_thread is not None:
            self._accept_thread.join()
        for cur_thread in self._session_threads:
            cur_thread.join()
        if self._socket is not None:
            self._socket.close()
        logger.info('Replay server stopped')

    def _accept_loop(self):
        while not self._stop_event.is_set():
            try:
                conn, address = self._socket.accept()
            except socket.timeout:
                continue
            except OSError:
                if self._stop_event.is_set():
                    break
                raise
            self.sessions_count += 1
            if self._finished.is_set() and not self.config.loop_forever:
                logger.info('Replay over, closing %s:%d', *address[:2])
                conn.close()
                continue
            conn.settimeout(self.config.send_timeout_s)
            cur_thread = threading.Thread(
                target=self._serve_session, args=(conn, address),
                name='replay-session-{}'.format(self.sessions_count),
                daemon=True)
            # ended sessions are forgotten
            self._session_threads = [
                prev_thread for prev_thread in self._session_threads
                if prev_thread.is_alive()]
            self._session_threads.append(cur_thread)
            cur_thread.start()

    def _wait_until(self, deadline):
        # True when a stop is requested during the wait
        delay = deadline - time.monotonic()
        if delay > 0:
            return self._stop_event.wait(delay)
        return self._stop_event.is_set()

    def _serve_session(self, conn, address):
        logger.info('Replay session opened for %s:%d', *address[:2])
        period = self.config.period_s
        sent = 0
        start = time.monotonic()
        try:
            with conn:
                while True:
                    for sentence in self._sentences:
                        if self._wait_until(start + sent * period):
                            return
                        conn.sendall(sentence)
                        sent += 1
                    if not self.config.loop_forever:
                        break
                # the last fix keeps its time slot before the stream ends
                self._wait_until(start + sent * period)
                self._finished.set()
        except OSError as exc:
            logger.info(
                'Replay session for %s:%d ended: %s', *address[:2], exc)
            return
        logger.info(
            'Replay session for %s:%d done, %d sentences sent',
            *address[:2], sent)


def replay_serve(trace, config, stop_event=None):
    """Serve a trace as a GPS receiver would, until interrupted.

    :param Trace trace: The trace to replay (at least one fix).
    :param ReplayConfig config: The server configuration.
    :param threading.Event stop_event: (optional, default None)
        Serving stops once it is set.
    :raises StartupError: When the endpoint cannot be bound.
    """
    server = ReplayServer(trace, config, stop_event)
    try:
        server.serve_forever()
    finally:
        server.stop()


class SeriesCsvSink:
    """Append-only error series CSV, flushed after each row.

    Same format as `report.to_series_csv`.

    :param file stream: A text file object opened for writing.
    :param list labels: Series labels ('receiver' first).
    """

    def __init__(self, stream, labels):
        self.stream = stream
        self.labels = tuple(labels)
        self.rows_count = 0
        self.stream.write(series_csv_header(self.labels) + '\n')
        self.stream.flush()

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'labels={self.labels}'
            ', rows_count={self.rows_count}'
            ')'.format(self=self))

    def write_row(self, record_id, values):
        """Append the error margins of one record."""
        self.stream.write(format_series_row(record_id, values) + '\n')
        self.stream.flush()
        self.rows_count += 1


class TrackSession:
    """Live tracking session state.

    The session owns its filter: it must only be used by one thread.

    :param tuple connect_endpoint: (host, port) of the replay server.
    :param FilterParams params: The filter parameters.
    :param GeoPosition reference: The ground-truth position.
    :param str label: (optional, default 'live') The trace label.
    :param float timeout: (optional, default 30)
        Connection and read timeout, in seconds.
    """

    def __init__(self, connect_endpoint, params, reference, label='live', *,
                 timeout=30.0):
        if not isinstance(params, FilterParams):
            raise InvalidArgumentError(
                'Invalid filter params: {!r}'.format(params))
        self.connect_endpoint = tuple(connect_endpoint)
        self.params = params
        self.reference = reference
        self.timeout = timeout
        self._reader = NmeaTraceReader(reference, label)
        self._filter = PositionFilter(params)
        self._filtered = []

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'connect_endpoint={self.connect_endpoint}'
            ', params={self.params}'
            ', received={self.received}'
            ', corrupted={self.corrupted}'
            ')'.format(self=self))

    @property
    def received(self):
        """Get the number of fixes received so far."""
        return len(self._reader.fixes)

    @property
    def corrupted(self):
        """Get the number of corrupted sentences skipped so far."""
        return self._reader.corrupted

    @property
    def skipped(self):
        """Get the number of unsupported or fixless sentences skipped."""
        return self._reader.skipped + self._reader.no_fix

    @property
    def series_labels(self):
        """Get the sink series labels."""
        return (RECEIVER_LABEL, self.params.label)

    def process_line(self, line, sink=None):
        """Read, filter and report one sentence.

        :param bytes|str line: The received sentence.
        :param SeriesCsvSink sink: (optional, default None)
            Receives the receiver and filtered error margins of the fix.
        :return GpsFix: The fix read, None when the line was skipped.
        """
        fix = self._reader.feed(line)
        if fix is None:
            return None
        position = self._filter.update(fix.position)
        self._filtered.append(position)
        if sink is not None:
            sink.write_row(fix.record_id, (
                haversine_distance(fix.position, self.reference),
                haversine_distance(position, self.reference)))
        return fix

    def bundle(self):
        """Get the report bundle of all fixes received so far.

        :raises EmptyInputError: When no fix was received.
        """
        return ReportBundle(
            self._reader.trace, {self.params.label: self._filtered})


def track_live(session, sink=None):
    """Track a live NMEA stream until the server closes it.

    :param TrackSession session: The session to run.
    :param SeriesCsvSink sink: (optional, default None)
        Receives the error margins of each fix as it arrives.
    :return ReportBundle: The bundle of the whole received trace.
    :raises ConnectError: When the server cannot be reached.
    :raises StreamError: When the stream times out or breaks.
    :raises EmptyInputError: When the stream held no fix.
    """
    try:
        conn = socket.create_connection(
            session.connect_endpoint, timeout=session.timeout)
    except OSError as exc:
        raise ConnectError('Cannot connect to {}:{}: {}'.format(
            *session.connect_endpoint, exc))
    logger.info('Tracking %s:%d', *session.connect_endpoint)
    try:
        with conn, conn.makefile('rb') as stream:
            for line in stream:
                session.process_line(line, sink)
    except socket.timeout:
        raise StreamError('Stream timed out after {} fixes'.format(
            session.received))
    except OSError as exc:
        raise StreamError('Stream broken after {} fixes: {}'.format(
            session.received, exc))
    logger.info(
        'Stream closed: %d fixes, %d corrupted, %d skipped sentences',
        session.received, session.corrupted, session.skipped)
    return session.bundle()
