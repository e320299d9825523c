"""Machine-readable reports.

- GeoJSON map overlay: reference position, receiver fixes and filtered
  positions (RFC 7946, longitude-latitude coordinates)
- error series CSV: error margins per record, ready to plot
- filtered positions CSV, in the canonical trace format
- comparison table of the error summaries
"""

import json

from .analysis import RECEIVER_LABEL, compare, evaluate
from .exceptions import EmptyInputError, InvalidArgumentError, ShapeError
from .filters import FilterKind
from .ingest import GpsFix, Trace, write_trace_csv


# column order of known filters in reports, other labels follow
FILTER_LABELS_ORDER = tuple(kind.value for kind in FilterKind)

REFERENCE_ROLE = 'reference'


class ReportBundle:
    """A raw trace, its filtered positions, error series and summaries.

    :param Trace raw_trace: The raw trace (at least one fix).
    :param dict filtered: Filter label -> filtered positions.
    :param dict series: (optional, default None)
        Label -> ErrorSeries, computed when not given.
    :param dict summaries: (optional, default None)
        Label -> ErrorSummary, computed when not given.
    :raises EmptyInputError: When the trace has no fix.
    :raises ShapeError: When a list length differs from the trace one.
    """

    def __init__(self, raw_trace, filtered, series=None, summaries=None):
        if len(raw_trace) == 0:
            raise EmptyInputError('Cannot report on an empty trace')
        self.raw_trace = raw_trace
        self.filtered = {
            label: tuple(filtered[label])
            for label in _sorted_labels(filtered)}
        if series is None or summaries is None:
            series, summaries = evaluate(raw_trace, self.filtered)
        self.series = series
        self.summaries = summaries

        for label, positions in self.filtered.items():
            if len(positions) != len(raw_trace):
                raise ShapeError(
                    '{} positions count ({}) differs from trace length '
                    '({})'.format(label, len(positions), len(raw_trace)))
        for label, cur_series in self.series.items():
            if len(cur_series) != len(raw_trace):
                raise ShapeError(
                    '{} series length ({}) differs from trace length '
                    '({})'.format(label, len(cur_series), len(raw_trace)))

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'raw_trace={self.raw_trace}'
            ', filter_labels={labels}'
            ')'.format(self=self, labels=tuple(self.filtered)))

    @property
    def filter_labels(self):
        """Get the filter labels, in report order."""
        return tuple(self.filtered)

    @property
    def series_labels(self):
        """Get the receiver label followed by the filter labels."""
        return (RECEIVER_LABEL,) + self.filter_labels


def _sorted_labels(labels):
    def _key(label):
        if label in FILTER_LABELS_ORDER:
            return (FILTER_LABELS_ORDER.index(label), label)
        return (len(FILTER_LABELS_ORDER), label)
    return sorted(labels, key=_key)


def build_bundle(trace, params_list):
    """Filter a trace with each of `params_list` and bundle the results.

    :param Trace trace: The raw trace.
    :param list params_list: FilterParams instances (possibly empty).
    :return ReportBundle: The bundle.
    """
    if len(trace) == 0:
        raise EmptyInputError('Cannot report on an empty trace')
    return ReportBundle(trace, *compare(trace, params_list))


def _point_feature(position, properties):
    return {
        'type': 'Feature',
        'geometry': {
            'type': 'Point',
            'coordinates': list(position.to_lon_lat()),
        },
        'properties': properties,
    }


def to_geojson_dict(bundle):
    """Build the GeoJSON FeatureCollection of a bundle, as a dict.

    Features: the reference point, one point per receiver fix, then for
    each filter a LineString and one point per filtered position. The
    `role` property tells them apart ('reference', 'receiver' or the filter
    label).

    :param ReportBundle bundle: The bundle to export.
    :return dict: The FeatureCollection.
    """
    trace = bundle.raw_trace
    features = [_point_feature(
        trace.reference, {'role': REFERENCE_ROLE, 'label': trace.label})]
    receiver_series = bundle.series[RECEIVER_LABEL]
    for fix, error_m in zip(trace.fixes, receiver_series.values):
        features.append(_point_feature(fix.position, {
            'role': RECEIVER_LABEL,
            'record_id': fix.record_id,
            'satellites': fix.satellites,
            'error_m': round(error_m, 2),
        }))

    for label in bundle.filter_labels:
        positions = bundle.filtered[label]
        features.append({
            'type': 'Feature',
            'geometry': {
                'type': 'LineString',
                'coordinates': [list(pos.to_lon_lat()) for pos in positions],
            },
            'properties': {'role': label},
        })
        for fix, position, error_m in zip(
                trace.fixes, positions, bundle.series[label].values):
            features.append(_point_feature(position, {
                'role': label,
                'record_id': fix.record_id,
                'error_m': round(error_m, 2),
            }))

    return {'type': 'FeatureCollection', 'features': features}


def to_geojson(bundle, *, indent=2):
    """Export a bundle as a GeoJSON document.

    :param ReportBundle bundle: The bundle to export.
    :param int indent: (optional, default 2) JSON indentation.
    :return str: The GeoJSON text.
    """
    return json.dumps(
        to_geojson_dict(bundle), sort_keys=True, indent=indent,
        separators=(',', ': ')) + '\n'


def series_csv_header(labels):
    """Get the error series CSV header line for series `labels`."""
    return ','.join(
        ('record_id',) + tuple('{}_m'.format(label) for label in labels))


def format_series_row(record_id, values):
    """Get an error series CSV line (2 decimals meters)."""
    return ','.join(
        [str(record_id)] + ['{:.2f}'.format(value) for value in values])


def to_series_csv(bundle):
    """Export the error series of a bundle as CSV.

    Header is `record_id,receiver_m[,kalman_m][,average_m]`, one row per
    record.

    :param ReportBundle bundle: The bundle to export.
    :return str: The CSV text.
    """
    labels = bundle.series_labels
    lines = [series_csv_header(labels)]
    for index, fix in enumerate(bundle.raw_trace.fixes):
        lines.append(format_series_row(
            fix.record_id,
            [bundle.series[label].values[index] for label in labels]))
    return '\n'.join(lines) + '\n'


def filtered_trace(bundle, label):
    """Get the filtered positions of a bundle as a trace.

    Record ids and satellites counts are the raw fixes ones.

    :param ReportBundle bundle: The bundle.
    :param str label: The filter label.
    :return Trace: The filtered trace.
    :raises InvalidArgumentError: When `label` is not in the bundle.
    """
    if label not in bundle.filtered:
        raise InvalidArgumentError('Unknown filter label: {}'.format(label))
    raw_trace = bundle.raw_trace
    fixes = (
        GpsFix(fix.record_id, position, fix.satellites, fix.timestamp)
        for fix, position in zip(raw_trace.fixes, bundle.filtered[label]))
    return Trace(
        fixes, raw_trace.reference,
        '{} ({})'.format(raw_trace.label, label).strip())


def to_positions_csv(bundle, label):
    """Export filtered positions in the canonical trace CSV format."""
    return write_trace_csv(filtered_trace(bundle, label))


def to_comparison_table(bundle):
    """Render the error summaries of a bundle as a text table.

    One row per source (receiver then filters): final and minimum error
    margins, index of the minimum and improvement rate of the minimum.

    :param ReportBundle bundle: The bundle.
    :return str: The table.
    """
    header = ('source', 'final_m', 'min_m', 'min_index', 'improvement_pct')
    rows = [header]
    for label in bundle.series_labels:
        summary = bundle.summaries[label]
        improvement = '-'
        if summary.improvement_pct is not None:
            improvement = '{:.2f}'.format(summary.improvement_pct)
        rows.append((
            label,
            '{:.2f}'.format(summary.final_m),
            '{:.2f}'.format(summary.min_m),
            str(summary.min_index),
            improvement,
        ))
    widths = [max(len(row[col]) for row in rows) for col in range(len(header))]
    lines = [
        '  '.join(
            [row[0].ljust(widths[0])]
            + [cell.rjust(width) for cell, width in zip(row[1:], widths[1:])])
        for row in rows]
    return '\n'.join(lines) + '\n'
