"""Error margin analysis.

The error margin of a position is its distance to the reference position
of the trace. Series of error margins are summarized (final, minimum) and
compared to the receiver baseline.
"""

import math

import numpy as np

from .exceptions import EmptyInputError, InvalidArgumentError, ShapeError
from .filters import filter_trace
from .geodesy import haversine_distance


RECEIVER_LABEL = 'receiver'


class ErrorSeries:
    """Error margins, one per fix, in meters.

    :param iterable values: Non negative finite distances.
    :param str source_label: 'receiver', 'kalman' or 'average'.
    :param iterable record_ids: (optional, default None)
        Record id of each value, positions 0, 1... when None.
    :raises InvalidArgumentError: When a value is negative or not finite,
        or when `record_ids` length differs from `values` one.
    """

    def __init__(self, values, source_label, record_ids=None):
        self.values = tuple(float(value) for value in values)
        self.source_label = source_label
        if record_ids is None:
            record_ids = range(len(self.values))
        self.record_ids = tuple(record_ids)
        for value in self.values:
            if not math.isfinite(value) or value < 0:
                raise InvalidArgumentError(
                    'Invalid error margin: {}'.format(value))
        if len(self.record_ids) != len(self.values):
            raise InvalidArgumentError(
                '{} record ids for {} error margins'.format(
                    len(self.record_ids), len(self.values)))

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'source_label="{self.source_label}"'
            ', values_count={values_count}'
            ')'.format(self=self, values_count=len(self.values)))

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return (self.values == other.values
                    and self.source_label == other.source_label
                    and self.record_ids == other.record_ids)
        return False

    def __len__(self):
        return len(self.values)


class ErrorSummary:
    """Summary of an error series.

    :param str source_label: Label of the summarized series.
    :param float final_m: Error margin of the last fix.
    :param float min_m: Minimum error margin.
    :param int min_index: Record id of the (first) minimum.
    :param float mean_m: Mean error margin.
    :param float improvement_pct: (optional, default None)
        Improvement rate of the minimum versus a baseline minimum.
    :param float final_benefit_m: (optional, default None)
        Baseline final error minus this final error.
    :param float min_benefit_m: (optional, default None)
        Baseline minimum error minus this minimum error.
    """

    def __init__(self, source_label, final_m, min_m, min_index, mean_m, *,
                 improvement_pct=None, final_benefit_m=None,
                 min_benefit_m=None):
        self.source_label = source_label
        self.final_m = final_m
        self.min_m = min_m
        self.min_index = min_index
        self.mean_m = mean_m
        self.improvement_pct = improvement_pct
        self.final_benefit_m = final_benefit_m
        self.min_benefit_m = min_benefit_m

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'source_label="{self.source_label}"'
            ', final_m={self.final_m}'
            ', min_m={self.min_m}'
            ', min_index={self.min_index}'
            ', improvement_pct={self.improvement_pct}'
            ')'.format(self=self))


def error_series(positions, reference, source_label=RECEIVER_LABEL,
                 record_ids=None):
    """Compute the error margin of each position.

    :param list positions: GeoPosition instances.
    :param GeoPosition reference: The ground-truth position.
    :param str source_label: (optional, default 'receiver')
        Label of the positions source.
    :param iterable record_ids: (optional, default None)
        Record id of each position (see `ErrorSeries`).
    :return ErrorSeries: One distance per position, same order.
    :raises EmptyInputError: When `positions` is empty.
    """
    if len(positions) == 0:
        raise EmptyInputError('No position to evaluate')
    return ErrorSeries(
        (haversine_distance(position, reference) for position in positions),
        source_label, record_ids)


def improvement_rate(baseline_m, filtered_m):
    """Improvement of an error margin versus a baseline, in percent.

    :param float baseline_m: Baseline error margin, positive.
    :param float filtered_m: Improved error margin, non negative.
    :return float: 100 * (baseline_m - filtered_m) / baseline_m, unrounded.
    :raises InvalidArgumentError: When `baseline_m` is not positive.
    """
    if not baseline_m > 0:
        raise InvalidArgumentError(
            'Invalid baseline: {} (must be positive)'.format(baseline_m))
    if not filtered_m >= 0:
        raise InvalidArgumentError(
            'Invalid error margin: {}'.format(filtered_m))
    return 100 * (baseline_m - filtered_m) / baseline_m


def summarize(series, baseline=None):
    """Summarize an error series, optionally against a baseline series.

    Ties on the minimum are broken to the lowest index. The improvement
    rate is left unset when the baseline minimum is 0: a fix lying on the
    reference position cannot be improved.

    :param ErrorSeries series: The series to summarize.
    :param ErrorSeries baseline: (optional, default None)
        Series to compare with (the receiver one, usually).
    :return ErrorSummary: The summary.
    :raises EmptyInputError: When `series` is empty.
    :raises ShapeError: When `baseline` length differs from `series` one.
    """
    if len(series) == 0:
        raise EmptyInputError('Cannot summarize an empty series')
    values = np.asarray(series.values)
    # argmin returns the first occurrence
    min_index = int(np.argmin(values))
    summary = ErrorSummary(
        series.source_label, series.values[-1], series.values[min_index],
        series.record_ids[min_index], float(values.mean()))

    if baseline is not None:
        if len(baseline) != len(series):
            raise ShapeError(
                'Series lengths differ: {} (baseline) and {}'.format(
                    len(baseline), len(series)))
        baseline_min = min(baseline.values)
        if baseline_min > 0:
            summary.improvement_pct = improvement_rate(
                baseline_min, summary.min_m)
        summary.final_benefit_m = baseline.values[-1] - summary.final_m
        summary.min_benefit_m = baseline_min - summary.min_m
    return summary


def evaluate(trace, filtered):
    """Compute error series and summaries of a trace and its filtered
    positions.

    :param Trace trace: The raw trace.
    :param dict filtered: Filter label -> filtered positions.
    :return tuple: (series dict, summaries dict), both by label, the
        receiver ('receiver' label) first.
    :raises ShapeError: When a positions count differs from the trace one.
    """
    receiver = error_series(
        trace.positions, trace.reference, record_ids=trace.record_ids)
    series = {RECEIVER_LABEL: receiver}
    summaries = {RECEIVER_LABEL: summarize(receiver)}
    for label, positions in filtered.items():
        if len(positions) != len(trace):
            raise ShapeError(
                '{} {} positions for {} fixes'.format(
                    len(positions), label, len(trace)))
        series[label] = error_series(
            positions, trace.reference, label, trace.record_ids)
        summaries[label] = summarize(series[label], receiver)
    return series, summaries


def compare(trace, params_list):
    """Filter a trace with each of `params_list` and evaluate the results.

    :param Trace trace: The raw trace.
    :param list params_list: FilterParams instances.
    :return tuple: (filtered dict, series dict, summaries dict), by label.
    """
    filtered = {
        params.label: filter_trace(trace, params) for params in params_list}
    series, summaries = evaluate(trace, filtered)
    return filtered, series, summaries
