#!/usr/bin/env python3
"""
Test script for application defaults and run-configuration loading.
"""

import json
import os
import sys

import pytest

# Add the src directory to the path so we can import the modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from fracfront.models.simulation import SimConfig
from fracfront.storage.config_manager import DEFAULT_CONFIG, ConfigManager, _deep_merge
from fracfront.storage.run_config import load_run_config, read_document
from fracfront.utils.exceptions import ConfigError, ValidationError


def test_defaults_without_a_file(tmp_path):
    manager = ConfigManager(str(tmp_path / 'config.yaml'))
    assert manager.get('solver.dx') == 0.25
    assert manager.get('profile.monotone_tol') == pytest.approx(1e-10)
    assert manager.get('specfun.ml_switch') == 10.0
    assert manager.get('no.such.key', 'fallback') == 'fallback'


def test_set_persists(tmp_path):
    print("🔍 Testing config persistence...")
    path = tmp_path / 'config.yaml'
    ConfigManager(str(path)).set('output.precision', 12)
    ConfigManager(str(path)).set('new.section.value', 'x')
    reloaded = ConfigManager(str(path))
    assert reloaded.get('output.precision') == 12
    assert reloaded.get('new.section.value') == 'x'
    # untouched defaults survive the merge
    assert reloaded.get('solver.dt') == 0.05


def test_env_config_dir(tmp_path, monkeypatch):
    monkeypatch.setenv('FRACFRONT_CONFIG_DIR', str(tmp_path))
    manager = ConfigManager()
    assert manager.config_path == tmp_path / 'config.yaml'


def test_broken_yaml_falls_back(tmp_path):
    path = tmp_path / 'config.yaml'
    path.write_text("solver: [unclosed\n")
    assert ConfigManager(str(path)).get('solver.dx') == 0.25


def test_deep_merge_does_not_mutate():
    merged = _deep_merge(DEFAULT_CONFIG, {'solver': {'dx': 0.1}})
    assert merged['solver']['dx'] == 0.1
    assert merged['solver']['dt'] == 0.05
    assert DEFAULT_CONFIG['solver']['dx'] == 0.25


def test_read_document_errors(tmp_path):
    with pytest.raises(ConfigError):
        read_document(str(tmp_path / 'missing.json'))
    listing = tmp_path / 'list.json'
    listing.write_text('[1, 2]')
    with pytest.raises(ConfigError):
        read_document(str(listing))


def test_load_run_config_merges_defaults(tmp_path):
    path = tmp_path / 'sim.json'
    path.write_text(json.dumps({"alpha": 0.5, "l": 20.0, "l0": 15.0, "omega": 1.0, "x0": 5.0, "t_max": 1.0}))
    config = load_run_config(str(path), SimConfig, 'simulate', defaults={'dx': 0.5, 'dt': 0.1})
    assert config.dx == 0.5 and config.dt == 0.1


def test_load_run_config_reports_fields(tmp_path):
    path = tmp_path / 'sim.json'
    path.write_text(json.dumps({"alpha": 0.5, "l": 20.0}))
    with pytest.raises(ValidationError) as excinfo:
        load_run_config(str(path), SimConfig, 'simulate')
    assert 'l0' in str(excinfo.value)
    assert excinfo.value.exit_code == 2


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, '-v']))
