"""Fixtures for tests"""

from pathlib import Path
import numpy as np
import pytest

from gps_enhancer import FilterKind, FilterParams, GeoPosition, load_dataset


# clear weather trace reference position
REFERENCE = GeoPosition(39.9525646, 32.7966589)

# published error margins of the clear weather trace, by record id
PUBLISHED_ERROR_MARGINS = (
    80.22, 74.96, 74.56, 74.17, 67.28, 54.70, 48.02, 48.02, 48.02, 40.98,
    37.69, 31.59, 29.69, 28.19, 25.23, 22.20, 22.20, 20.29, 18.93, 18.09,
    17.00, 12.52, 12.17, 12.17, 12.17, 12.17, 11.83, 11.21, 9.62, 9.39,
)
# records whose published margin does not match their printed coordinates
# (54.70 and 22.20 are misprints): record id -> recomputed margin
MISPRINTED_ERROR_MARGINS = {5: 51.65, 16: 19.38}


def _build_filepath(filename):
    samples_dirpath = Path(__file__).parent / 'samples'
    return samples_dirpath / filename


@pytest.fixture
def reference():
    return REFERENCE


@pytest.fixture
def clear_weather_trace():
    return load_dataset('clear_weather')


@pytest.fixture
def kalman_params():
    return FilterParams()


@pytest.fixture
def average_params():
    return FilterParams(kind=FilterKind.AVERAGE)


@pytest.fixture
def rng():
    return np.random.default_rng(20170315)


@pytest.fixture(params=['clear_weather.nmea'])
def nmea_filepath(request):
    """Return an NMEA log file path."""
    return _build_filepath(request.param)


@pytest.fixture
def samples_dirpath():
    return _build_filepath('')
