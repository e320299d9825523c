"""Positional primitives and great-circle distance."""

import math

from .exceptions import InvalidArgumentError


# Earth's mean radius in meters (spherical model)
EARTH_RADIUS_M = 6371000.0


class GeoPosition:
    """A latitude/longitude pair, in decimal degrees.

    Instances are immutable and hashable.

    :param float lat_deg: Latitude in [-90, +90].
    :param float lon_deg: Longitude in [-180, +180].
    :raises InvalidArgumentError:
        When a coordinate is not finite or out of its range.
    """

    __slots__ = ('_lat_deg', '_lon_deg')

    def __init__(self, lat_deg, lon_deg):
        lat_deg = _check_coordinate(lat_deg, 90.0, 'latitude')
        lon_deg = _check_coordinate(lon_deg, 180.0, 'longitude')
        object.__setattr__(self, '_lat_deg', lat_deg)
        object.__setattr__(self, '_lon_deg', lon_deg)

    def __setattr__(self, name, value):
        raise AttributeError(
            '{} is immutable'.format(self.__class__.__name__))

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'lat_deg={self.lat_deg}'
            ', lon_deg={self.lon_deg}'
            ')'.format(self=self))

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return (self.lat_deg == other.lat_deg
                    and self.lon_deg == other.lon_deg)
        return False

    def __hash__(self):
        return hash((self.lat_deg, self.lon_deg))

    @property
    def lat_deg(self):
        """Get the latitude, in decimal degrees."""
        return self._lat_deg

    @property
    def lon_deg(self):
        """Get the longitude, in decimal degrees."""
        return self._lon_deg

    def to_lon_lat(self):
        """Get the (longitude, latitude) pair, GeoJSON coordinate order."""
        return (self.lon_deg, self.lat_deg)

    @classmethod
    def from_lon_lat(cls, coordinates):
        """Build a position from a GeoJSON (longitude, latitude) pair."""
        lon_deg, lat_deg = coordinates[:2]
        return cls(lat_deg, lon_deg)


def _check_coordinate(value, bound, name):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidArgumentError('Invalid {}: {!r}'.format(name, value))
    if not math.isfinite(value):
        raise InvalidArgumentError('Non finite {}: {}'.format(name, value))
    if not -bound <= value <= bound:
        raise InvalidArgumentError(
            'Out of range {}: {} (expected [-{b}, {b}])'.format(
                name, value, b=bound))
    return value


def haversine_distance(pos_a, pos_b):
    """Great-circle distance between two positions on a spherical Earth.

    The result is symmetric: the haversine term only depends on squared
    sines and on the product of both cosines.

    :param GeoPosition pos_a: First position.
    :param GeoPosition pos_b: Second position.
    :return float: The surface distance, in meters.
    :raises InvalidArgumentError: When an argument is not a GeoPosition.
    """
    for pos in (pos_a, pos_b):
        if not isinstance(pos, GeoPosition):
            raise InvalidArgumentError('Invalid position: {!r}'.format(pos))

    lat_a = math.radians(pos_a.lat_deg)
    lat_b = math.radians(pos_b.lat_deg)
    dlat = math.radians(pos_b.lat_deg - pos_a.lat_deg)
    dlon = math.radians(pos_b.lon_deg - pos_a.lon_deg)

    hav = (math.sin(dlat / 2) ** 2
           + math.cos(lat_a) * math.cos(lat_b) * math.sin(dlon / 2) ** 2)
    # rounding may push `hav` a hair above 1 for antipodal points
    hav = min(1.0, hav)
    return 2 * EARTH_RADIUS_M * math.asin(math.sqrt(hav))
