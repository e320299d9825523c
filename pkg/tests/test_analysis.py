"""Tests on error margin analysis."""

import pytest

from gps_enhancer import GeoPosition, GpsFix, Trace
from gps_enhancer.analysis import (
    RECEIVER_LABEL, ErrorSeries, ErrorSummary, error_series, summarize,
    improvement_rate, evaluate, compare)
from gps_enhancer.exceptions import (
    EmptyInputError, InvalidArgumentError, ShapeError)
from gps_enhancer.filters import filter_trace

from .conftest import (
    MISPRINTED_ERROR_MARGINS, PUBLISHED_ERROR_MARGINS, REFERENCE)


class TestErrorSeries:

    def test_error_series(self):

        series = ErrorSeries([1, 2.5, 0], 'kalman')
        assert series.values == (1.0, 2.5, 0.0)
        assert series.source_label == 'kalman'
        assert len(series) == 3
        assert series == ErrorSeries((1.0, 2.5, 0.0), 'kalman')
        assert series != ErrorSeries((1.0, 2.5, 0.0), 'average')
        assert repr(series) == (
            '<ErrorSeries>(source_label="kalman", values_count=3)')
        assert series.record_ids == (0, 1, 2)
        numbered = ErrorSeries((1.0, 2.5, 0.0), 'kalman', (4, 6, 9))
        assert numbered.record_ids == (4, 6, 9)
        assert numbered != series

        for bad_values in ([-1], [float('nan')], [float('inf')]):
            with pytest.raises(InvalidArgumentError):
                ErrorSeries(bad_values, 'receiver')
        with pytest.raises(InvalidArgumentError):
            ErrorSeries([1, 2], 'receiver', (0,))

    def test_error_series_positions(self, clear_weather_trace):

        series = error_series([REFERENCE] * 5, REFERENCE)
        assert series.values == (0.0,) * 5
        assert series.source_label == RECEIVER_LABEL

        series = error_series(clear_weather_trace.positions, REFERENCE)
        assert len(series) == 30
        for record_id, (value, published) in enumerate(
                zip(series.values, PUBLISHED_ERROR_MARGINS)):
            if record_id in MISPRINTED_ERROR_MARGINS:
                published = MISPRINTED_ERROR_MARGINS[record_id]
            assert value == pytest.approx(published, abs=0.15)
        assert series.values[21] == pytest.approx(12.52, abs=0.15)

        with pytest.raises(EmptyInputError):
            error_series([], REFERENCE)

    def test_error_series_filtered(self, clear_weather_trace, kalman_params):

        series = error_series(
            filter_trace(clear_weather_trace, kalman_params), REFERENCE,
            'kalman')
        assert series.source_label == 'kalman'
        summary = summarize(series)
        assert summary.min_m == pytest.approx(3.47, abs=0.1)
        assert summary.min_index == 21


class TestSummarize:

    def test_summarize(self, clear_weather_trace):

        receiver = error_series(clear_weather_trace.positions, REFERENCE)
        summary = summarize(receiver)
        assert isinstance(summary, ErrorSummary)
        assert summary.source_label == RECEIVER_LABEL
        assert summary.final_m == pytest.approx(9.39, abs=0.15)
        assert summary.min_m == pytest.approx(9.39, abs=0.15)
        assert summary.min_index == 29
        assert summary.mean_m == pytest.approx(
            sum(receiver.values) / 30, rel=1e-12)
        assert summary.improvement_pct is None
        assert summary.final_benefit_m is None
        assert summary.min_benefit_m is None

    def test_summarize_ties(self):

        summary = summarize(ErrorSeries([5, 5, 5], 'receiver'))
        assert summary.final_m == 5
        assert summary.min_m == 5
        assert summary.min_index == 0
        assert summary.mean_m == 5

        summary = summarize(ErrorSeries([7, 2, 3, 2], 'receiver'))
        assert summary.min_index == 1

    def test_summarize_baseline(self):

        baseline = ErrorSeries([10, 8, 4], 'receiver')
        summary = summarize(ErrorSeries([6, 1, 3], 'kalman'), baseline)
        assert summary.improvement_pct == pytest.approx(75)
        assert summary.final_benefit_m == pytest.approx(1)
        assert summary.min_benefit_m == pytest.approx(3)
        assert repr(summary) == (
            '<ErrorSummary>(source_label="kalman", final_m=3.0, min_m=1.0'
            ', min_index=1, improvement_pct=75.0)')

    def test_summarize_record_ids(self):

        summary = summarize(
            ErrorSeries([7, 2, 3, 2], 'receiver', (3, 8, 9, 12)))
        assert summary.min_index == 8

    def test_summarize_zero_baseline(self):

        # a fix right on the reference position
        baseline = ErrorSeries([0, 8, 4], 'receiver')
        summary = summarize(ErrorSeries([0, 1, 3], 'kalman'), baseline)
        assert summary.improvement_pct is None
        assert summary.final_benefit_m == pytest.approx(1)
        assert summary.min_benefit_m == 0

    def test_summarize_permutation(self, rng):

        for _ in range(50):
            values = rng.uniform(0, 100, size=20)
            summary = summarize(ErrorSeries(values, 'receiver'))
            shuffled = summarize(
                ErrorSeries(rng.permutation(values), 'receiver'))
            assert shuffled.min_m == summary.min_m
            assert shuffled.mean_m == pytest.approx(summary.mean_m)

    def test_summarize_errors(self):

        with pytest.raises(EmptyInputError):
            summarize(ErrorSeries([], 'receiver'))
        with pytest.raises(ShapeError):
            summarize(
                ErrorSeries([1, 2], 'kalman'),
                ErrorSeries([1, 2, 3], 'receiver'))


class TestImprovementRate:

    def test_improvement_rate(self):

        # clear and cloudy weather, Kalman then average
        assert improvement_rate(9.39, 3.47) == pytest.approx(63.04, abs=0.01)
        assert improvement_rate(9.39, 4.18) == pytest.approx(55.48, abs=0.01)
        assert improvement_rate(19.50, 11.76) == pytest.approx(
            39.69, abs=0.01)
        assert improvement_rate(19.50, 12.29) == pytest.approx(
            36.97, abs=0.01)

        for value in (0.01, 1, 9.39, 1e6):
            assert improvement_rate(value, value) == 0
        assert improvement_rate(4, 0) == 100
        # worse than the baseline
        assert improvement_rate(4, 6) == -50

    @pytest.mark.parametrize('baseline_m, filtered_m', [
        (0, 1), (-1, 1), (float('nan'), 1), (1, -1), (1, float('nan'))])
    def test_improvement_rate_errors(self, baseline_m, filtered_m):

        with pytest.raises(InvalidArgumentError):
            improvement_rate(baseline_m, filtered_m)


class TestCompare:

    def test_compare(
            self, clear_weather_trace, kalman_params, average_params):

        filtered, series, summaries = compare(
            clear_weather_trace, [kalman_params, average_params])
        assert tuple(filtered) == ('kalman', 'average')
        assert tuple(series) == ('receiver', 'kalman', 'average')
        assert tuple(summaries) == ('receiver', 'kalman', 'average')
        assert filtered['kalman'] == filter_trace(
            clear_weather_trace, kalman_params)

        receiver = summaries['receiver']
        kalman = summaries['kalman']
        average = summaries['average']

        assert kalman.final_m == pytest.approx(3.64, abs=0.1)
        assert kalman.min_m == pytest.approx(3.47, abs=0.1)
        assert kalman.min_index == 21
        # recomputed minima give 62.6 instead of 63.04
        assert kalman.improvement_pct == pytest.approx(63.04, abs=0.5)
        assert kalman.improvement_pct == pytest.approx(
            improvement_rate(receiver.min_m, kalman.min_m))
        assert kalman.final_benefit_m == pytest.approx(
            receiver.final_m - kalman.final_m)
        assert kalman.final_benefit_m == pytest.approx(5.65, abs=0.15)
        assert kalman.min_benefit_m == pytest.approx(5.92, abs=0.1)

        assert average.final_m == pytest.approx(4.18, abs=0.1)
        assert average.min_index == 29
        assert average.final_benefit_m == pytest.approx(5.21, abs=0.1)
        assert average.improvement_pct == pytest.approx(55.48, abs=0.5)

        # Kalman filter beats the average one on this trace
        assert kalman.min_m < average.min_m < receiver.min_m
        assert kalman.final_m < average.final_m < receiver.final_m

    def test_evaluate(self, clear_weather_trace):

        series, summaries = evaluate(clear_weather_trace, {})
        assert tuple(series) == (RECEIVER_LABEL,)
        assert summaries[RECEIVER_LABEL].min_index == 29

        trace = Trace(
            [GpsFix(0, GeoPosition(39.953250, 32.796365), 3)], REFERENCE)
        with pytest.raises(ShapeError):
            evaluate(trace, {'kalman': (REFERENCE, REFERENCE)})

    def test_compare_on_reference(self, kalman_params):

        trace = Trace([
            GpsFix(0, REFERENCE, 8),
            GpsFix(1, GeoPosition(39.9526, 32.7967), 8)], REFERENCE)
        _, _, summaries = compare(trace, [kalman_params])
        assert summaries[RECEIVER_LABEL].min_m == 0
        assert summaries['kalman'].improvement_pct is None
        assert summaries['kalman'].final_benefit_m is not None

    def test_compare_record_ids(self, clear_weather_trace, kalman_params):

        # record ids 10 to 29
        trace = Trace(clear_weather_trace.fixes[10:], REFERENCE)
        _, series, summaries = compare(trace, [kalman_params])
        assert series['kalman'].record_ids == tuple(range(10, 30))
        assert summaries[RECEIVER_LABEL].min_index == 29
        assert summaries['kalman'].min_index in trace.record_ids

    def test_compare_errors(self, kalman_params):

        with pytest.raises(EmptyInputError):
            compare(Trace([], REFERENCE), [kalman_params])
