"""
Application configuration management for fracfront.

Holds tool-wide numeric defaults (not run configurations, see run_config).
"""

import copy
import os
from pathlib import Path
from typing import Any, Dict

import yaml

from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)

_PACKAGE_DEFAULTS = Path(__file__).resolve().parents[3] / 'config' / 'default_config.yaml'

DEFAULT_CONFIG: Dict[str, Any] = {
    'specfun': {
        'ml_series_radius': 2.0,
        'ml_switch': 10.0,
        'ml_max_abs_z': 1.0e4,
    },
    'solver': {
        'dx': 0.25,
        'dt': 0.05,
        'level': 0.1,
        'memory_budget_mb': 2048,
    },
    'profile': {
        'outer_tol': 1.0e-8,
        'max_iterations': 50000,
        'monotone_tol': 1.0e-10,
        'domain_factor': 60.0,
        'step_factor': 0.02,
        'max_step': 0.05,
        'critical_offset': 1.0e-3,
    },
    'output': {
        'precision': 17,
    },
    'display': {
        'colors': True,
    },
}


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigManager:
    """Manages application configuration."""

    def __init__(self, config_path: str = None):
        """
        Initialize the ConfigManager.

        Args:
            config_path: Path to config file. If None, uses default location.
        """
        config_dir_env = os.environ.get('FRACFRONT_CONFIG_DIR')
        if config_dir_env:
            config_dir = Path(config_dir_env)
        else:
            config_dir = Path.home() / '.fracfront'

        if config_path is None:
            self.config_path = config_dir / 'config.yaml'
        else:
            self.config_path = Path(config_path)

        self.config = self._load_config()
        logger.debug(f"ConfigManager initialized with config file: {self.config_path}")

    def _defaults(self) -> Dict[str, Any]:
        defaults = DEFAULT_CONFIG
        if _PACKAGE_DEFAULTS.exists():
            try:
                with open(_PACKAGE_DEFAULTS, 'r') as f:
                    defaults = _deep_merge(defaults, yaml.safe_load(f) or {})
            except yaml.YAMLError as e:
                logger.error(f"Error reading packaged defaults {_PACKAGE_DEFAULTS}: {e}")
        return defaults

    def _load_config(self) -> Dict[str, Any]:
        """
        Load configuration from file, merged over the defaults.

        Returns:
            Dict[str, Any]: Configuration dictionary
        """
        defaults = self._defaults()
        if not self.config_path.exists():
            return defaults

        try:
            with open(self.config_path, 'r') as f:
                config = yaml.safe_load(f) or {}
            logger.debug(f"Loaded config from: {self.config_path}")
            return _deep_merge(defaults, config)
        except (OSError, yaml.YAMLError) as e:
            logger.error(f"Error loading config file: {e}")
            return defaults

    def _save_config(self, config: Dict[str, Any]) -> None:
        try:
            self.config_path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.config_path, 'w') as f:
                yaml.dump(config, f, default_flow_style=False)
            logger.debug(f"Saved config to: {self.config_path}")
        except OSError as e:
            logger.error(f"Error saving config file: {e}")

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a configuration value.

        Args:
            key: Configuration key (can use dot notation for nested keys)
            default: Default value if key not found

        Returns:
            Configuration value
        """
        value = self.config
        try:
            for k in key.split('.'):
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key: str, value: Any) -> None:
        """
        Set a configuration value and persist it.

        Args:
            key: Configuration key (can use dot notation for nested keys)
            value: Value to set
        """
        keys = key.split('.')
        config = self.config
        for k in keys[:-1]:
            if k not in config or not isinstance(config[k], dict):
                config[k] = {}
            config = config[k]
        config[keys[-1]] = value

        self._save_config(self.config)
        logger.debug(f"Set config key '{key}' to '{value}'")

