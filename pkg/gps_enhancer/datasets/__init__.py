"""Bundled GPS traces.

Each trace is a canonical CSV file with a JSON sidecar (same path, `.json`
suffix) giving its label and ground-truth reference position.
"""

import json
from pathlib import Path

from ..exceptions import InputFileError, InvalidArgumentError, SchemaError
from ..geodesy import GeoPosition
from ..ingest import parse_trace_csv


DATASETS = {
    'clear_weather': 'data/clear_weather.csv',
}


def sidecar_path(filepath):
    """Get the sidecar metadata file path of a trace file."""
    return Path(filepath).with_suffix('.json')


def read_sidecar(filepath):
    """Read the label and reference of a trace file, from its sidecar.

    :param str|Path filepath: The trace file path (not the sidecar one).
    :return tuple: (GeoPosition reference, str label), or (None, '') when
        the trace file has no sidecar.
    :raises SchemaError: When the sidecar has no valid reference.
    """
    metadata_path = sidecar_path(filepath)
    if not metadata_path.is_file():
        return None, ''
    with open(str(metadata_path), encoding='utf-8') as metadata_file:
        metadata = json.load(metadata_file)
    try:
        reference = GeoPosition(
            metadata['reference']['latitude'],
            metadata['reference']['longitude'])
    except (KeyError, TypeError, InvalidArgumentError) as exc:
        raise SchemaError(
            'Invalid reference in {}: {}'.format(metadata_path, exc))
    return reference, metadata.get('label', '')


def read_trace_file(filepath, *, reference=None, label=None):
    """Read a CSV trace file.

    :param str|Path filepath: The CSV file path.
    :param GeoPosition reference: (optional, default None)
        Overrides the sidecar reference, mandatory without sidecar.
    :param str label: (optional, default None) Overrides the sidecar label.
    :return Trace: The trace read.
    :raises InputFileError: When the file does not exist.
    :raises InvalidArgumentError: When no reference is available.
    """
    filepath = Path(filepath)
    if not filepath.is_file():
        raise InputFileError('Invalid filename: {}'.format(filepath))
    sidecar_reference, sidecar_label = read_sidecar(filepath)
    reference = reference or sidecar_reference
    if reference is None:
        raise InvalidArgumentError(
            'No reference position for {} (no sidecar file)'.format(
                filepath))
    with open(str(filepath), 'rb') as trace_file:
        return parse_trace_csv(
            trace_file.read(), reference,
            sidecar_label if label is None else label)


def dataset_path(name):
    """Get the file path of a bundled dataset.

    :param str name: The dataset name (see DATASETS).
    :raises InvalidArgumentError: When `name` is not a bundled dataset.
    """
    if name not in DATASETS:
        raise InvalidArgumentError('Invalid dataset name: {}'.format(name))
    return Path(__file__).parent / DATASETS[name]


def load_dataset(name):
    """Load a bundled trace.

    :param str name: The dataset name (see DATASETS).
    :return Trace: The trace, with its reference and label.
    """
    return read_trace_file(dataset_path(name))
