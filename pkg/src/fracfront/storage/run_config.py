"""
JSON run configurations.

A run configuration is one JSON document validated by the subcommand's
pydantic model; unknown fields are errors. A manifest.json written by an
earlier run is accepted as well when its subcommand matches.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Type, TypeVar

import pydantic
from pydantic import BaseModel

from fracfront.storage.config_manager import _deep_merge
from fracfront.utils.exceptions import ConfigError, ValidationError
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)

ModelT = TypeVar('ModelT', bound=BaseModel)


def _field_messages(error: pydantic.ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = '.'.join(str(p) for p in item['loc']) or '<document>'
        parts.append(f"{location}: {item['msg']}")
    return '; '.join(parts)


def read_document(path: str) -> Dict[str, Any]:
    """
    Read a JSON object from path.

    Raises:
        ConfigError: Missing file, invalid JSON or a non-object document
    """
    config_path = Path(path)
    try:
        with open(config_path, 'r') as f:
            document = json.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"config file not found: {config_path}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"{config_path} is not valid JSON: {e}") from e
    if not isinstance(document, dict):
        raise ConfigError(f"{config_path} must hold a JSON object")
    return document


def load_run_config(path: str, model: Type[ModelT], subcommand: str,
                    defaults: Optional[Dict[str, Any]] = None) -> ModelT:
    """
    Load and validate a run configuration.

    Args:
        path: JSON run configuration or manifest
        model: Pydantic model of the subcommand
        subcommand: Subcommand name, checked against manifests
        defaults: Values used where the document is silent

    Returns:
        The validated model

    Raises:
        ConfigError: Unreadable document or manifest of another subcommand
        ValidationError: Field-level validation failures
    """
    document = read_document(path)
    if 'subcommand' in document and 'config' in document:
        if document['subcommand'] != subcommand:
            raise ConfigError(
                f"manifest was written by '{document['subcommand']}', not '{subcommand}'",
                details={'manifest': str(path)},
            )
        logger.info(f"re-running manifest {path}")
        document = document['config']

    if defaults:
        document = _deep_merge(defaults, document)
    try:
        return model.model_validate(document)
    except pydantic.ValidationError as e:
        raise ValidationError(f"invalid {subcommand} config: {_field_messages(e)}",
                              details={'errors': len(e.errors())}) from e
