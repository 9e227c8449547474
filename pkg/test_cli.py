#!/usr/bin/env python3
"""
Test script for the fracfront command line: outputs, manifests and exit codes.
"""

import csv
import json
import os
import sys

import pytest
from click.testing import CliRunner

# Add the src directory to the path so we can import the modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from fracfront import __version__
from fracfront.main import cli

SIM_CONFIG = {"alpha": 0.8, "l": 20.0, "l0": 15.0, "omega": 1.0, "x0": 5.0, "t_max": 1.0}


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    monkeypatch.setenv('FRACFRONT_CONFIG_DIR', str(tmp_path / 'home'))


def invoke(*args):
    return CliRunner().invoke(cli, ['--quiet', *args], catch_exceptions=False)


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def read_manifest(out_dir):
    return json.loads((out_dir / 'manifest.json').read_text())


def test_version():
    result = CliRunner().invoke(cli, ['--version'])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_dispersion_json():
    print("🔍 Testing dispersion output...")
    result = invoke('dispersion', '--alpha', '0.5', '--c', '4')
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data['regime'] == 'two_roots'
    assert data['roots'][0] == pytest.approx(0.29560, abs=1e-5)
    assert data['roots'][1] == pytest.approx(1.0, abs=1e-12)
    assert data['has_wave'] is True


def test_dispersion_below_cstar():
    data = json.loads(invoke('dispersion', '--alpha', '0.5', '--c', '3').output)
    assert data['regime'] == 'none'
    assert data['roots'] == []
    assert data['has_wave'] is False


def test_domain_error_exit_code():
    result = invoke('dispersion', '--alpha', '1.5')
    assert result.exit_code == 2


def test_profile_refusal_exit_code(tmp_path):
    """c below c*_alpha: exit 4 and no output files."""
    config = write_json(tmp_path / 'profile.json', {"alpha": 0.5, "c": 3.0})
    out_dir = tmp_path / 'out'
    result = invoke('--out', str(out_dir), 'profile', '--config', config)
    assert result.exit_code == 4
    assert not out_dir.exists()


def test_malformed_config_exit_code(tmp_path):
    """Validation failures exit with 2 before anything is written."""
    out_dir = tmp_path / 'out'
    bad_alpha = write_json(tmp_path / 'bad.json', dict(SIM_CONFIG, alpha=2.0))
    assert invoke('--out', str(out_dir), 'simulate', '--config', bad_alpha).exit_code == 2

    unknown = write_json(tmp_path / 'unknown.json', dict(SIM_CONFIG, speed=3.0))
    assert invoke('--out', str(out_dir), 'simulate', '--config', unknown).exit_code == 2

    broken = tmp_path / 'broken.json'
    broken.write_text('{"alpha": 0.5,')
    assert invoke('--out', str(out_dir), 'simulate', '--config', str(broken)).exit_code == 2

    missing = str(tmp_path / 'missing.json')
    assert invoke('--out', str(out_dir), 'simulate', '--config', missing).exit_code == 2
    assert not out_dir.exists()


def test_simulate_outputs_and_manifest_rerun(tmp_path):
    print("🔍 Testing simulate and a manifest re-run...")
    config = write_json(tmp_path / 'sim.json', SIM_CONFIG)
    first = tmp_path / 'first'
    assert invoke('--out', str(first), 'simulate', '--config', config).exit_code == 0

    manifest = read_manifest(first)
    assert manifest['subcommand'] == 'simulate'
    assert manifest['version'] == __version__
    assert manifest['config']['dx'] == 0.25
    assert set(manifest['outputs']) == {
        'front.json', 'track.csv', 'snapshot_t0.000000.csv', 'snapshot_t1.000000.csv',
    }
    with open(first / 'track.csv') as f:
        rows = list(csv.reader(f))
    assert rows[0] == ['t', 'x_star']
    assert len(rows) == 1 + 21
    front = json.loads((first / 'front.json').read_text())
    assert front['status'] in ('stopped', 'horizon', 'no_crossing')

    second = tmp_path / 'second'
    result = invoke('--out', str(second), 'simulate', '--config', str(first / 'manifest.json'))
    assert result.exit_code == 0
    assert (second / 'track.csv').read_text() == (first / 'track.csv').read_text()
    assert read_manifest(second)['config'] == manifest['config']

    # a manifest only re-runs its own subcommand
    result = invoke('--out', str(tmp_path / 'third'), 'profile', '--config', str(first / 'manifest.json'))
    assert result.exit_code == 2


def test_simulate_pure_diffusion_writes_variance(tmp_path):
    config = write_json(tmp_path / 'diffusion.json', {
        "alpha": 0.5, "l": 40.0, "l0": 20.0, "omega": 1.0, "x0": 10.0, "t_max": 1.0, "dt": 0.01,
        "initial": "pulse", "pulse_width": 0.5, "nonlinearity": {"kind": "none"},
    })
    out_dir = tmp_path / 'out'
    assert invoke('--out', str(out_dir), 'simulate', '--config', config).exit_code == 0
    variance = json.loads((out_dir / 'variance.json').read_text())
    assert variance['slope'] == pytest.approx(0.5, abs=0.1)
    assert (out_dir / 'variance.csv').exists()


def test_speed_sweep_writes_table(tmp_path):
    config = write_json(tmp_path / 'sweep.json', {
        "base": dict(SIM_CONFIG, t_max=0.5),
        "alphas": [0.6, 0.9],
    })
    out_dir = tmp_path / 'out'
    assert invoke('--out', str(out_dir), 'speed-sweep', '--config', config).exit_code == 0
    with open(out_dir / 'sweep.csv') as f:
        rows = list(csv.DictReader(f))
    assert [float(r['alpha']) for r in rows] == [0.6, 0.9]
    assert all(r['status'] == 'horizon' for r in rows)
    assert all(float(r['c_star']) > 2.0 for r in rows)
    assert read_manifest(out_dir)['subcommand'] == 'speed-sweep'


def test_malthus_check(tmp_path):
    out_dir = tmp_path / 'out'
    result = invoke('--out', str(out_dir), 'malthus-check', '--alpha', '0.5')
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data['passed'] is True
    assert len(data['orders']) == 2
    assert 'rows' not in data
    with open(out_dir / 'malthus.csv') as f:
        rows = list(csv.reader(f))
    assert rows[0] == ['t', 'v_numeric', 'v_exact', 'abs_error']
    assert len(rows) == 1 + 161
    manifest = read_manifest(out_dir)
    assert manifest['subcommand'] == 'malthus-check'
    assert manifest['outputs'] == ['malthus.csv']


def test_kernel_check():
    print("🔍 Testing kernel-check...")
    result = invoke('kernel-check')
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data['passed'] is True
    names = {check['name'] for check in data['checks']}
    assert 'tail constant' in names and 'zero mean' in names
    assert 'lattice G order-preserving (negative part)' in names
    assert 'selected kappa norm <= 1/2' in names
    assert data['selected_kappa'] ** 2 >= 2.0 - 1e-12


def test_config_set_and_get():
    runner = CliRunner()
    assert runner.invoke(cli, ['config', 'set', 'output.precision', '12']).exit_code == 0
    result = runner.invoke(cli, ['config', 'get', 'output.precision'])
    assert result.exit_code == 0
    assert 'output.precision: 12' in result.output
    runner.invoke(cli, ['config', 'set', 'profile.monotone_tol', '1e-9'])
    assert 'profile.monotone_tol: 1e-09' in runner.invoke(cli, ['config', 'get', 'profile.monotone_tol']).output


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, '-v']))
