"""
Poset file loading and report saving.
Handles reading poset JSON files, schema validation, polytope export and
writing reports.
"""

import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError

from src.geometry.polytope import LatticePolytope
from src.poset.core import Poset, PosetError, parse_poset
from src.utils.config import get_data_config, get_reporting_config
from src.utils.logger import PerformanceLogger, get_logger

logger = get_logger(__name__)


class PosetFileError(ValueError):
    """Raised when a poset file is not valid JSON or breaks the schema."""


class PosetFile(BaseModel):
    """{"d": int, "covers": [[a, b], ...]} with 1-based labels, a < b meaning p_a < p_b."""

    d: int = Field(ge=1)
    covers: List[Tuple[int, int]] = Field(default_factory=list)


class PosetLoader:
    """Loads and validates poset files."""

    def __init__(self, file_path: str):
        """
        Initialize poset loader.

        Args:
            file_path: Path to a poset JSON file, or "-" for stdin. Bare names
                are also looked up in the configured input directory.
        """
        self.config = get_data_config()
        self.file_path = file_path
        self.poset: Optional[Poset] = None

    def _resolve(self) -> Path:
        path = Path(self.file_path)
        if path.exists():
            return path
        fallback = Path(self.config.input_dir) / path
        if fallback.exists():
            return fallback
        raise FileNotFoundError(f"Poset file not found: {self.file_path}")

    def _read_text(self) -> str:
        if self.file_path == "-":
            return sys.stdin.read()
        return self._resolve().read_text(encoding="utf-8")

    def load(self) -> Poset:
        """
        Read, validate and close the poset under transitivity.

        Returns:
            The parsed Poset

        Raises:
            FileNotFoundError: If the file doesn't exist
            PosetFileError: If the JSON or its schema is invalid
            PosetError: If the covers contain a cycle or bad indices
        """
        with PerformanceLogger(logger, f"loading poset from {self.file_path}"):
            try:
                payload = json.loads(self._read_text())
                spec = PosetFile.model_validate(payload)
            except json.JSONDecodeError as e:
                logger.error(f"Invalid JSON in {self.file_path}: {e}")
                raise PosetFileError(f"{self.file_path}: invalid JSON ({e})") from e
            except ValidationError as e:
                logger.error(f"Invalid poset file {self.file_path}: {e}")
                raise PosetFileError(f"{self.file_path}: {e}") from e

            self.poset = parse_poset(spec.d, spec.covers)
            logger.info(f"Loaded {self.poset.describe()} from {self.file_path}")
            return self.poset


def load_poset(file_path: str) -> Poset:
    """Convenience wrapper around PosetLoader."""
    return PosetLoader(file_path).load()


def load_pair(first_path: str, second_path: str) -> Tuple[Poset, Poset]:
    """
    Load two posets of equal size.

    Raises:
        PosetError: On a size mismatch
    """
    first, second = load_poset(first_path), load_poset(second_path)
    if first.d != second.d:
        raise PosetError(f"posets have different sizes {first.d} and {second.d}")
    return first, second


def save_poset(poset: Poset, output_path: str) -> None:
    Path(output_path).parent.mkdir(parents=True, exist_ok=True)
    Path(output_path).write_text(json.dumps(poset.to_dict()) + "\n", encoding="utf-8")


def render_json(payload: Any) -> str:
    """Deterministic JSON text (sorted keys, configured indent)."""
    indent = get_reporting_config().indent
    return json.dumps(payload, indent=indent or None, sort_keys=True)


def save_report(text: str, output_path: Optional[str] = None, name: str = "report.json") -> Path:
    """
    Write report text to a file, creating parent directories.

    Args:
        text: Rendered report
        output_path: Target path; defaults to <reports_dir>/<name>
        name: File name used with the default directory

    Returns:
        The path written
    """
    path = Path(output_path) if output_path else Path(get_data_config().reports_dir) / name
    path.parent.mkdir(parents=True, exist_ok=True)
    with PerformanceLogger(logger, f"saving report to {path}"):
        path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    return path


def records_to_jsonl(records: List[Dict[str, Any]]) -> str:
    """One JSON object per line, keys sorted."""
    return "\n".join(json.dumps(r, sort_keys=True) for r in records)


def save_polytope(polytope: LatticePolytope, output_path: str) -> Path:
    """Write a polytope in the export format (vertices plus facet inequalities)."""
    return save_report(render_json(polytope.to_dict()), output_path)


def load_polytope(input_path: str) -> LatticePolytope:
    """
    Read an exported polytope back.

    Raises:
        FileNotFoundError: If the file does not exist
        PosetFileError: If the file is not valid JSON
    """
    path = Path(input_path)
    if not path.exists():
        raise FileNotFoundError(f"Polytope file not found: {input_path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise PosetFileError(f"{input_path}: invalid JSON ({e.msg})") from e
    return LatticePolytope.from_dict(payload)
