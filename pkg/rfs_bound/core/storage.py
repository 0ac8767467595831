"""
Output storage utilities.
Writes result tables and run manifests, wrapping filesystem errors.
"""
import json
from pathlib import Path
from typing import Any, Optional, Union

from rfs_bound.core.config import settings
from rfs_bound.core.exceptions import OutputError
from rfs_bound.core.logger import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]


class OutputManager:
    """
    Manages result files of CLI runs.

    Directory structure:
    results/
    ├── {name}.csv               # Series table (or .xlsx)
    ├── {name}.manifest.json     # Resolved config, version, run id, timing
    └── fig{N}/                  # --figure grids
        └── {label}.csv
    """

    def __init__(self, base_path: Optional[PathLike] = None):
        """
        Initialize output manager.

        Args:
            base_path: Directory for relative output paths (default: settings.output_dir)
        """
        self.base_path = Path(base_path or settings.output_dir)

    def resolve(self, path: PathLike) -> Path:
        """Absolute paths are kept, relative ones are placed under base_path."""
        target = Path(path)
        if target.is_absolute():
            return target
        return self.base_path / target

    def ensure_directory(self, directory: PathLike) -> Path:
        path = Path(directory)
        try:
            path.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise OutputError(f"Cannot create directory {path}: {e}", details={"path": str(path)}) from e
        logger.debug(f"Ensured directory exists: {path}")
        return path

    def write_bytes(self, path: PathLike, payload: bytes) -> Path:
        """
        Write a payload, creating parent directories.

        Returns:
            Path of the written file

        Raises:
            OutputError: the file cannot be written
        """
        target = self.resolve(path)
        self.ensure_directory(target.parent)
        try:
            target.write_bytes(payload)
        except OSError as e:
            raise OutputError(f"Cannot write {target}: {e}", details={"path": str(target)}) from e
        logger.info(f"Wrote {target} ({len(payload)} bytes)")
        return target

    def write_text(self, path: PathLike, text: str) -> Path:
        return self.write_bytes(path, text.encode("utf-8"))

    @staticmethod
    def manifest_path(table_path: PathLike) -> Path:
        """`out.csv` -> `out.manifest.json` beside it."""
        table = Path(table_path)
        return table.with_name(f"{table.stem}.manifest.json")

    def write_manifest(self, table_path: PathLike, manifest: dict[str, Any]) -> Path:
        text = json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True)
        return self.write_text(self.manifest_path(self.resolve(table_path)), text + "\n")


# Singleton instance
_output_manager: OutputManager | None = None


def get_output_manager() -> OutputManager:
    """Get singleton instance of OutputManager."""
    global _output_manager
    if _output_manager is None:
        _output_manager = OutputManager()
    return _output_manager
