"""
Staged CSV/JSON output.

Files are collected in memory and written only by commit(), so a failing
run leaves no partial output set behind.
"""

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

from fracfront.models.manifest import RunManifest
from fracfront.utils.exceptions import ConfigError
from fracfront.utils.logger import setup_logger

logger = setup_logger(__name__)

MANIFEST_NAME = 'manifest.json'


def format_value(value: Any, precision: int = 17) -> str:
    """CSV cell text: floats with `precision` significant digits, None as empty."""
    if value is None:
        return ''
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return 'nan'
        return f"{value:.{precision}g}"
    return str(value)


def _json_ready(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    return value


def dumps(data: Dict[str, Any]) -> str:
    """Deterministic JSON text (sorted keys, non-finite floats as null)."""
    return json.dumps(_json_ready(data), indent=2, sort_keys=True) + '\n'


class OutputWriter:
    """Output set of one subcommand invocation."""

    def __init__(self, out_dir: str, precision: int = 17):
        self.out_dir = Path(out_dir)
        self.precision = precision
        self._pending: Dict[str, str] = {}

    @property
    def names(self) -> List[str]:
        return list(self._pending)

    def add_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(v, self.precision) for v in row])
        self._pending[name] = buffer.getvalue()

    def add_json(self, name: str, data: Dict[str, Any]) -> None:
        self._pending[name] = dumps(data)

    def commit(self, manifest: RunManifest) -> List[Path]:
        """
        Write every staged file and the manifest.

        Raises:
            ConfigError: The output directory cannot be written
        """
        manifest.outputs = sorted(self._pending)
        files = dict(self._pending)
        files[MANIFEST_NAME] = dumps(manifest.model_dump(mode='json'))
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
            written = []
            for name, text in files.items():
                path = self.out_dir / name
                with open(path, 'w', newline='') as f:
                    f.write(text)
                written.append(path)
        except OSError as e:
            raise ConfigError(f"cannot write outputs to {self.out_dir}: {e}") from e
        logger.info(f"wrote {len(written)} files to {self.out_dir}")
        return written
