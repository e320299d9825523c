"""Tests on command line interface."""

import json
import socket

import pytest

from gps_enhancer.cli import EXIT_CODES_HELP, build_parser, main
from gps_enhancer.datasets import dataset_path
from gps_enhancer.stream import ReplayConfig, ReplayServer

from .conftest import _build_filepath


REF_ARG = '39.9525646,32.7966589'


def _table_rows(text):
    return {line.split()[0]: line.split() for line in text.splitlines()}


class TestCli:

    def test_cli_analyze(self, capsys):

        assert main(['analyze', '--dataset', 'clear_weather']) == 0
        rows = _table_rows(capsys.readouterr().out)
        assert set(rows) == {'source', 'receiver', 'kalman', 'average'}
        assert float(rows['receiver'][1]) == pytest.approx(9.39, abs=0.15)
        assert float(rows['kalman'][2]) == pytest.approx(3.47, abs=0.1)
        assert rows['kalman'][3] == '21'
        assert float(rows['kalman'][4]) == pytest.approx(63.04, abs=0.5)
        assert float(rows['average'][1]) == pytest.approx(4.18, abs=0.1)

    def test_cli_analyze_input_file(self, capsys):

        assert main(['analyze', '--dataset', 'clear_weather']) == 0
        from_dataset = capsys.readouterr().out
        # explicit file and reference, default filter parameters
        assert main([
            'analyze', '--input', str(dataset_path('clear_weather')),
            '--ref', REF_ARG]) == 0
        from_file = capsys.readouterr().out
        assert from_file == from_dataset
        assert main([
            'analyze', '--dataset', 'clear_weather', '--r', '1',
            '--p0', '4']) == 0
        assert capsys.readouterr().out == from_dataset

    def test_cli_analyze_kind(self, capsys):

        assert main([
            'analyze', '--dataset', 'clear_weather', '--kind', 'kalman',
            '--r', '2']) == 0
        rows = _table_rows(capsys.readouterr().out)
        assert set(rows) == {'source', 'receiver', 'kalman'}

    def test_cli_analyze_series_output(self, tmp_path, capsys):

        series_path = tmp_path / 'series.csv'
        table_path = tmp_path / 'table.txt'
        assert main([
            'analyze', '--dataset', 'clear_weather',
            '--series-output', str(series_path),
            '--output', str(table_path)]) == 0
        assert capsys.readouterr().out == ''

        lines = series_path.read_text().splitlines()
        assert lines[0] == 'record_id,receiver_m,kalman_m,average_m'
        assert len(lines) == 31
        assert lines[1].startswith('0,80.22,')
        assert 'kalman' in table_path.read_text()

    def test_cli_filter_then_analyze(self, tmp_path, capsys):

        filtered_path = tmp_path / 'filtered.csv'
        assert main([
            'filter', '--dataset', 'clear_weather', '--kind', 'average',
            '--output', str(filtered_path)]) == 0
        lines = filtered_path.read_text().splitlines()
        assert lines[0] == (
            'record_id,latitude,longitude,satellites,error_margin_m')
        assert len(lines) == 31
        # first average is the first fix
        assert lines[1] == '0,39.953250,32.796365,3,'

        assert main([
            'analyze', '--input', str(filtered_path), '--ref', REF_ARG]) == 0
        rows = _table_rows(capsys.readouterr().out)
        assert float(rows['receiver'][1]) == pytest.approx(4.18, abs=0.1)

    def test_cli_ingest(self, tmp_path, capsys):

        assert main([
            'ingest', '--input', str(_build_filepath('clear_weather.nmea')),
            '--ref', REF_ARG]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 31
        assert lines[1] == '0,39.953250,32.796365,3,'

        output_path = tmp_path / 'trace.csv'
        assert main([
            'ingest', '--input',
            str(_build_filepath('clear_weather_semicolon.csv')),
            '--ref', REF_ARG, '--output', str(output_path)]) == 0
        assert output_path.read_bytes().splitlines()[1] == (
            b'0,39.953250,32.796365,3,80.22')

    def test_cli_geojson(self, tmp_path):

        output_path = tmp_path / 'overlay.geojson'
        assert main([
            'geojson', '--dataset', 'clear_weather',
            '--output', str(output_path)]) == 0
        document = json.loads(output_path.read_text())
        assert len(document['features']) == 93

        assert main([
            'geojson', '--dataset', 'clear_weather', '--kind', 'kalman',
            '--output', str(output_path)]) == 0
        document = json.loads(output_path.read_text())
        assert len(document['features']) == 62

    def test_cli_deterministic(self, tmp_path):

        outputs = []
        for idx in range(2):
            output_path = tmp_path / 'overlay{}.geojson'.format(idx)
            assert main([
                'geojson', '--dataset', 'clear_weather',
                '--output', str(output_path)]) == 0
            outputs.append(output_path.read_bytes())
        assert outputs[0] == outputs[1]

    def test_cli_track(self, clear_weather_trace, tmp_path, capsys):

        sink_path = tmp_path / 'live.csv'
        config = ReplayConfig(rate_hz=500, listen_endpoint=('127.0.0.1', 0))
        with ReplayServer(clear_weather_trace, config) as server:
            assert main([
                'track', '--connect', '{}:{}'.format(*server.server_address),
                '--ref', REF_ARG, '--sink', str(sink_path),
                '--timeout', '10']) == 0
        rows = _table_rows(capsys.readouterr().out)
        assert rows['kalman'][3] == '21'
        lines = sink_path.read_text().splitlines()
        assert lines[0] == 'record_id,receiver_m,kalman_m'
        assert len(lines) == 31

    def test_cli_help(self, capsys):

        assert main(['--help']) == 0
        assert 'exit codes:' in capsys.readouterr().out
        assert '7  missing input file' in EXIT_CODES_HELP
        parser = build_parser()
        config = parser.parse_args(['analyze', '--dataset', 'clear_weather'])
        assert config.kind == 'all'
        assert config.r == 1
        assert config.p0 == 4
        assert config.ref is None

    @pytest.mark.parametrize('argv, exit_code', [
        (['analyze', '--dataset', 'clear_weather', '--unknown'], 2),
        (['analyze'], 2),
        (['analyze', '--dataset', 'cloudy_weather'], 2),
        (['analyze', '--dataset', 'clear_weather', '--p0', '0'], 3),
        (['analyze', '--dataset', 'clear_weather', '--ref', '91,0'], 3),
        (['analyze', '--input',
          str(_build_filepath('clear_weather_quoted.csv'))], 3),
        (['analyze', '--input', str(_build_filepath('header_only.csv'))], 4),
        (['filter', '--input', str(_build_filepath('header_only.csv'))], 4),
        (['analyze', '--input', str(_build_filepath('missing.csv')),
          '--ref', REF_ARG], 7),
        (['analyze', '--input', str(_build_filepath('missing.nmea')),
          '--ref', REF_ARG], 7),
    ])
    def test_cli_errors(self, argv, exit_code, capsys):

        assert main(argv) == exit_code
        if exit_code != 2:
            assert 'gps-enhancer: error:' in capsys.readouterr().err

    def test_cli_errors_empty_input(self, capsys):

        csv_path = str(_build_filepath('header_only.csv'))
        assert main(['analyze', '--input', csv_path]) == 4
        assert 'empty' in capsys.readouterr().err

    def test_cli_errors_parse(self, tmp_path):

        csv_path = tmp_path / 'bad.csv'
        csv_path.write_text(
            'record_id,latitude,longitude,satellites\n0,39.95,east,3\n')
        assert main([
            'analyze', '--input', str(csv_path), '--ref', REF_ARG]) == 5
        csv_path.write_text('record_id,latitude\n0,39.95\n')
        assert main([
            'analyze', '--input', str(csv_path), '--ref', REF_ARG]) == 5

    def test_cli_errors_not_utf8(self, tmp_path, capsys):

        csv_path = tmp_path / 'latin1.csv'
        csv_path.write_bytes(
            b'record_id,latitude,longitude,satellites\n0,39.95\xff,32.79,3\n')
        assert main([
            'analyze', '--input', str(csv_path), '--ref', REF_ARG]) == 5
        assert 'UTF-8' in capsys.readouterr().err

    def test_cli_analyze_on_reference(self, tmp_path, capsys):

        # first fix right on the reference position
        csv_path = tmp_path / 'on_reference.csv'
        csv_path.write_text(
            'record_id,latitude,longitude,satellites\n'
            '0,39.9525646,32.7966589,8\n'
            '1,39.9526,32.7967,8\n')
        assert main([
            'analyze', '--input', str(csv_path), '--ref', REF_ARG]) == 0
        rows = _table_rows(capsys.readouterr().out)
        assert rows['receiver'][2] == '0.00'
        assert rows['kalman'][4] == '-'

    def test_cli_errors_network(self):

        with socket.create_server(('127.0.0.1', 0)) as busy_socket:
            endpoint = '{}:{}'.format(*busy_socket.getsockname()[:2])
            # port already in use
            assert main([
                'replay', '--dataset', 'clear_weather',
                '--listen', endpoint]) == 6
        # nobody listens anymore
        assert main([
            'track', '--connect', endpoint, '--ref', REF_ARG,
            '--timeout', '5']) == 6
