"""GPS fixes and traces."""

import logging

from ..exceptions import InvalidArgumentError
from ..geodesy import GeoPosition


logger = logging.getLogger(__name__)


# a receiver needs at least three satellites to locate itself
MIN_SATELLITES = 3


class GpsFix:
    """One position record received from a GPS receiver.

    :param int record_id: Sequence number (None until the caller assigns it).
    :param GeoPosition position: The reported position.
    :param int satellites: Number of satellites used by the receiver.
    :param datetime.time|datetime.datetime timestamp: (optional,
        default None) UTC time of the fix, a full datetime when the date is
        known.
    :param float reported_error_m: (optional, default None)
        Error margin published alongside the fix. Kept for cross-checking
        only, never used as computed truth.
    :raises InvalidArgumentError:
        When `position`, `record_id` or `satellites` is not valid.
    """

    def __init__(self, record_id, position, satellites, timestamp=None, *,
                 reported_error_m=None):
        if not isinstance(position, GeoPosition):
            raise InvalidArgumentError(
                'Invalid position: {!r}'.format(position))
        if record_id is not None and (
                not isinstance(record_id, int) or record_id < 0):
            raise InvalidArgumentError(
                'Invalid record id: {!r}'.format(record_id))
        if not isinstance(satellites, int) or satellites < 0:
            raise InvalidArgumentError(
                'Invalid satellites count: {!r}'.format(satellites))
        self.record_id = record_id
        self.position = position
        self.satellites = satellites
        self.timestamp = timestamp
        self.reported_error_m = reported_error_m

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'record_id={self.record_id}'
            ', lat_deg={self.position.lat_deg}'
            ', lon_deg={self.position.lon_deg}'
            ', satellites={self.satellites}'
            ', timestamp={self.timestamp}'
            ')'.format(self=self))

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return (
                self.record_id == other.record_id
                and self.position == other.position
                and self.satellites == other.satellites
                and self.timestamp == other.timestamp)
        return False

    @property
    def usable(self):
        """A fix is usable when at least 3 satellites were used."""
        return self.satellites >= MIN_SATELLITES


class Trace:
    """An ordered list of fixes and the ground-truth reference position.

    :param list fixes: GpsFix instances, ordered by strictly increasing
        record id.
    :param GeoPosition reference: Surveyed location of the receiver.
    :param str label: (optional, default '') Free text ('clear weather'...).
    :raises InvalidArgumentError:
        When `reference` is not valid or fixes are not ordered.
    """

    def __init__(self, fixes, reference, label=''):
        if not isinstance(reference, GeoPosition):
            raise InvalidArgumentError(
                'Invalid reference: {!r}'.format(reference))
        self.fixes = tuple(fixes)
        self.reference = reference
        self.label = label

        for prev_fix, cur_fix in zip(self.fixes, self.fixes[1:]):
            if cur_fix.record_id <= prev_fix.record_id:
                raise InvalidArgumentError(
                    'Fixes must be ordered by increasing record id: '
                    '{} follows {}'.format(
                        cur_fix.record_id, prev_fix.record_id))

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'label="{self.label}"'
            ', fixes_count={fixes_count}'
            ', reference={self.reference}'
            ')'.format(self=self, fixes_count=len(self.fixes)))

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return (self.fixes == other.fixes
                    and self.reference == other.reference)
        return False

    def __len__(self):
        return len(self.fixes)

    @property
    def positions(self):
        """Get the tuple of fix positions."""
        return tuple(fix.position for fix in self.fixes)

    @property
    def record_ids(self):
        """Get the tuple of fix record ids."""
        return tuple(fix.record_id for fix in self.fixes)

    def usable_trace(self, *, min_satellites=MIN_SATELLITES):
        """Get a trace restricted to fixes seen by enough satellites.

        :param int min_satellites: (optional, default 3)
            Minimum number of satellites of a kept fix.
        :return Trace: The restricted trace.
        """
        fixes = tuple(
            fix for fix in self.fixes if fix.satellites >= min_satellites)
        if len(fixes) < len(self.fixes):
            logger.info(
                'Excluded %d fixes seen by less than %d satellites',
                len(self.fixes) - len(fixes), min_satellites)
        return self.__class__(fixes, self.reference, self.label)
