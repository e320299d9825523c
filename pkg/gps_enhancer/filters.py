"""Scalar post-processing filters for GPS traces.

Two filters are available, both applied separately on latitude and
longitude values:

- a scalar Kalman filter without process noise, so that its error
  covariance decays at each observation
- a cumulative average filter, whose output at step k is the arithmetic
  mean of the observations 0..k

Each filter is an explicit state machine (`KalmanState`, `AverageState`)
moved forward by pure step functions. `AxisFilter` children wrap those
functions for one axis and `PositionFilter` recombines both axes, so that
offline (`filter_trace`) and live tracking run the exact same arithmetic.
"""

import abc
import enum
import logging
import math

from .exceptions import EmptyInputError, InvalidParameterError
from .geodesy import GeoPosition
from .tools import check_finite


logger = logging.getLogger(__name__)


DEFAULT_R = 1.0
DEFAULT_P0 = 4.0


class FilterKind(enum.Enum):
    """Available filter kinds."""

    KALMAN = 'kalman'
    AVERAGE = 'average'


class FilterParams:
    """Filter configuration.

    :param float r: (optional, default 1)
        Measurement standard deviation, must be positive.
    :param float p0: (optional, default 4)
        Initial error covariance, must be positive (zero would mean that
        there is no noise at all).
    :param FilterKind|str kind: (optional, default FilterKind.KALMAN)
        The filter to apply.
    :raises InvalidParameterError: When `r`, `p0` or `kind` is not valid.
    """

    def __init__(self, r=DEFAULT_R, p0=DEFAULT_P0, kind=FilterKind.KALMAN):
        self.r = _check_positive(r, 'r')
        self.p0 = _check_positive(p0, 'p0')
        try:
            self.kind = FilterKind(kind)
        except ValueError:
            raise InvalidParameterError('Invalid filter kind: {}'.format(kind))

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'r={self.r}'
            ', p0={self.p0}'
            ', kind="{self.kind.value}"'
            ')'.format(self=self))

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return (self.r, self.p0, self.kind) == (
                other.r, other.p0, other.kind)
        return False

    @property
    def label(self):
        """Get the filter label used in reports ('kalman', 'average')."""
        return self.kind.value


def _check_positive(value, name):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise InvalidParameterError('Invalid {}: {!r}'.format(name, value))
    if not math.isfinite(value) or value <= 0:
        raise InvalidParameterError(
            'Invalid {}: {} (must be a positive number)'.format(name, value))
    return value


class KalmanState:
    """Scalar Kalman filter state.

    :param float x_est: Current estimate.
    :param float p_cov: Current error covariance (positive).
    :param float r: Measurement standard deviation (positive).
    :param float k_gain: (optional, default None)
        Last computed gain, None before the first step.
    """

    def __init__(self, x_est, p_cov, r, k_gain=None):
        self.x_est = x_est
        self.p_cov = p_cov
        self.r = r
        self.k_gain = k_gain

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'x_est={self.x_est}'
            ', p_cov={self.p_cov}'
            ', r={self.r}'
            ', k_gain={self.k_gain}'
            ')'.format(self=self))

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return (self.x_est, self.p_cov, self.r, self.k_gain) == (
                other.x_est, other.p_cov, other.r, other.k_gain)
        return False


class AverageState:
    """Cumulative average filter state.

    :param float total: (optional, default 0) Sum of consumed observations.
    :param int count: (optional, default 0) Number of consumed observations.
    """

    def __init__(self, total=0.0, count=0):
        if count < 0 or (count == 0 and total != 0):
            raise InvalidParameterError(
                'Invalid average state: total={}, count={}'.format(
                    total, count))
        self.total = total
        self.count = count

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'total={self.total}'
            ', count={self.count}'
            ')'.format(self=self))

    def __eq__(self, other):
        if isinstance(other, self.__class__):
            return (self.total, self.count) == (other.total, other.count)
        return False


def kalman_init(x0, params):
    """Initialize a Kalman state from the first observed value.

    :param float x0: First observed value.
    :param FilterParams params: Filter parameters (r and p0 are used).
    :return KalmanState: The initial state, without gain.
    :raises InvalidArgumentError: When `x0` is not finite.
    """
    x0 = check_finite(x0, name='x0')
    return KalmanState(x0, params.p0, params.r)


def kalman_step(state, z):
    """Consume one observation.

    :param KalmanState state: The state before the observation.
    :param float z: The observed value.
    :return tuple: (new KalmanState, new estimate)
    :raises InvalidArgumentError: When `z` is not finite.
    """
    z = check_finite(z, name='observation')
    x_prior = state.x_est
    p_prior = state.p_cov
    k_gain = p_prior / (p_prior + state.r)
    # same as K*z + (1 - K)*x', exact when z == x'
    x_est = x_prior + k_gain * (z - x_prior)
    # same as (1 - K)*P'
    p_cov = k_gain * state.r
    logger.debug(
        'kalman step: z=%r x=%r->%r p=%r->%r k=%r',
        z, x_prior, x_est, p_prior, p_cov, k_gain)
    return KalmanState(x_est, p_cov, state.r, k_gain), x_est


def average_step(state, z):
    """Consume one observation.

    :param AverageState state: The state before the observation.
    :param float z: The observed value.
    :return tuple: (new AverageState, new estimate)
    :raises InvalidArgumentError: When `z` is not finite.
    """
    z = check_finite(z, name='observation')
    total = state.total + z
    count = state.count + 1
    return AverageState(total, count), total / count


def closed_form_estimate(x0, p0, r, observations):
    """Kalman estimate after consuming `observations`, without iterating.

    Without process noise the recursion is a Bayesian fusion of the prior
    `x0` (weight 1/p0) and of each observation (weight 1/r).

    :param float x0: Initial estimate.
    :param float p0: Initial error covariance.
    :param float r: Measurement standard deviation.
    :param list observations: Observed values, at least one.
    :return float: The estimate.
    """
    if len(observations) == 0:
        raise EmptyInputError('No observation')
    return ((x0 / p0 + math.fsum(observations) / r)
            / (1 / p0 + len(observations) / r))


def closed_form_covariance(p0, r, nb_steps):
    """Kalman error covariance after `nb_steps` observations."""
    return 1 / (1 / p0 + nb_steps / r)


class AxisFilter(abc.ABC):
    """Filter of one coordinate axis.

    :param FilterParams params: The filter parameters.
    """

    @abc.abstractmethod
    def __init__(self, params):
        self.params = params
        self._state = None

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'params={self.params}'
            ', state={self.state}'
            ')'.format(self=self))

    @property
    def state(self):
        """Get the current state (None before the first observation)."""
        return self._state

    @abc.abstractmethod
    def update(self, z):
        """Consume an observation and return the new estimate."""

    @classmethod
    def create(cls, params):
        """Instanciate the axis filter matching `params.kind`.

        :param FilterParams params: The filter parameters.
        :return AxisFilter: The axis filter instance.
        """
        if params.kind is FilterKind.KALMAN:
            return KalmanAxisFilter(params)
        return AverageAxisFilter(params)


class KalmanAxisFilter(AxisFilter):
    """Kalman filter of one axis, initialized on its first observation."""

    def __init__(self, params):
        super().__init__(params)

    def update(self, z):
        if self._state is None:
            self._state = kalman_init(z, self.params)
        self._state, estimate = kalman_step(self._state, z)
        return estimate


class AverageAxisFilter(AxisFilter):
    """Cumulative average filter of one axis."""

    def __init__(self, params):
        super().__init__(params)
        self._state = AverageState()

    def update(self, z):
        self._state, estimate = average_step(self._state, z)
        return estimate


class PositionFilter:
    """Two independent axis filters, one per coordinate.

    :param FilterParams params: The filter parameters, shared by both axes.
    """

    def __init__(self, params):
        self.params = params
        self.lat_filter = AxisFilter.create(params)
        self.lon_filter = AxisFilter.create(params)

    def __repr__(self):
        return (
            '<{self.__class__.__name__}>('
            'lat_filter={self.lat_filter}'
            ', lon_filter={self.lon_filter}'
            ')'.format(self=self))

    def update(self, position):
        """Consume a position and return the recombined estimate.

        :param GeoPosition position: The observed position.
        :return GeoPosition: The filtered position.
        """
        return GeoPosition(
            self.lat_filter.update(position.lat_deg),
            self.lon_filter.update(position.lon_deg))


def filter_trace(trace, params):
    """Filter every fix of a trace, latitude and longitude separately.

    Every fix, the first one included, is consumed as an observation.

    :param Trace trace: The trace to filter.
    :param FilterParams params: The filter parameters.
    :return tuple: Filtered GeoPosition instances, one per fix.
    :raises EmptyInputError: When the trace has no fix.
    """
    if len(trace.fixes) == 0:
        raise EmptyInputError('Cannot filter an empty trace')
    position_filter = PositionFilter(params)
    return tuple(
        position_filter.update(fix.position) for fix in trace.fixes)
