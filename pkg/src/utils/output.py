"""
Result files: CSV tables with a commented header block, JSON reports with a
metadata object, and the complex-matrix CSV format read by the test command.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from .errors import ParseError, ShapeMismatchError

logger = logging.getLogger(__name__)


def _format_value(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, Path):
        return str(value)
    return value


class OutputWriter:
    """Writes the files of one command run into an output directory."""

    def __init__(
        self,
        output_dir: Path,
        command: str,
        config_hash: str,
        seed: int,
        tool: str = "xjx-spectra",
        version: str = "0.0.0",
    ) -> None:
        """
        Initialize the writer.

        Args:
            output_dir: Directory that receives the files
            command: Subcommand name, used as the file-name prefix
            config_hash: Hash of the resolved settings
            seed: Master seed of the run
            tool, version: Tool identification for the headers
        """
        self.output_dir = Path(output_dir)
        self.command = command
        self.metadata = {
            "tool": tool,
            "version": version,
            "command": command,
            "config_hash": config_hash,
            "seed": seed,
        }
        self.written: List[Path] = []

    def path_for(self, name: str, suffix: str) -> Path:
        return self.output_dir / f"{self.command}_{name}.{suffix}"

    def write_csv(self, name: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        """Write a CSV table preceded by ``# key: value`` header lines."""
        path = self.path_for(name, "csv")
        self.output_dir.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as f:
            for key, value in self.metadata.items():
                f.write(f"# {key}: {value}\n")
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_format_value(v) for v in row])
        self.written.append(path)
        logger.info(f"Wrote {path}")
        return path

    def write_json(self, name: str, payload: Dict[str, Any]) -> Path:
        """Write ``{"metadata": ..., **payload}`` with sorted keys."""
        path = self.path_for(name, "json")
        self.output_dir.mkdir(parents=True, exist_ok=True)
        document = {"metadata": self.metadata, **_jsonable(payload)}
        with open(path, "w") as f:
            json.dump(document, f, indent=2, sort_keys=True)
            f.write("\n")
        self.written.append(path)
        logger.info(f"Wrote {path}")
        return path


def read_csv_header(path: Path) -> Dict[str, str]:
    """The ``# key: value`` header block of a CSV written by OutputWriter."""
    header: Dict[str, str] = {}
    with open(path, "r") as f:
        for line in f:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition(":")
            header[key.strip()] = value.strip()
    return header


def read_matrix_csv(path: Path, shape: Optional[Sequence[int]] = None) -> np.ndarray:
    """
    Read an N x n complex matrix stored as rows of 2n numbers (re, im pairs).

    Blank lines and lines starting with ``#`` are skipped.

    Raises:
        ParseError: with the 1-based line and column of the offending field
        ShapeMismatchError: when the matrix does not match ``shape``
    """
    rows: List[np.ndarray] = []
    width: Optional[int] = None
    try:
        with open(path, "r", newline="") as f:
            for line_no, fields in enumerate(csv.reader(f), start=1):
                if not fields or not "".join(fields).strip() or fields[0].lstrip().startswith("#"):
                    continue
                values = np.empty(len(fields), dtype=float)
                for col, field in enumerate(fields, start=1):
                    try:
                        values[col - 1] = float(field)
                    except ValueError:
                        raise ParseError(f"'{field.strip()}' is not a number", line_no, col) from None
                    if not np.isfinite(values[col - 1]):
                        raise ParseError(f"non-finite value '{field.strip()}'", line_no, col)
                if len(fields) % 2:
                    raise ParseError(f"odd number of fields ({len(fields)}); expected re,im pairs", line_no)
                if width is None:
                    width = len(fields)
                elif len(fields) != width:
                    raise ParseError(f"row has {len(fields)} fields, previous rows have {width}", line_no)
                rows.append(values[0::2] + 1j * values[1::2])
    except OSError as e:
        logger.error(f"Cannot read matrix file {path}: {e}")
        raise
    if not rows:
        raise ParseError("no data rows", 1)
    matrix = np.vstack(rows)
    if shape is not None and matrix.shape != tuple(shape):
        raise ShapeMismatchError(f"Matrix in {path} has shape {matrix.shape}, expected {tuple(shape)}")
    logger.debug(f"Read a {matrix.shape} matrix from {path}")
    return matrix


def write_matrix_csv(path: Path, M: np.ndarray) -> Path:
    """Inverse of ``read_matrix_csv``."""
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2:
        raise ShapeMismatchError(f"Expected a matrix, got shape {M.shape}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    interleaved = np.empty((M.shape[0], 2 * M.shape[1]), dtype=float)
    interleaved[:, 0::2] = M.real
    interleaved[:, 1::2] = M.imag
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        for row in interleaved:
            writer.writerow([_format_value(v) for v in row])
    return path
