"""CSV tables with a metadata comment block, plus a JSON metadata sidecar."""

import csv
import io
import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

log = logging.getLogger(__name__)

try:
    from __init__ import __version__ as APP_VERSION
except ImportError:
    APP_VERSION = "1.0.0"

TOOL_NAME = "impulsebsc"

# Significant digits written for every float
_FLOAT_FORMAT = ".15g"


@dataclass
class Table:
    """Header plus data rows, in output order."""

    header: List[str]
    rows: List[Sequence[Any]] = field(default_factory=list)


def format_cell(value: Any) -> str:
    """Render one CSV cell: floats with 15 significant digits, None as empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, _FLOAT_FORMAT)
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)


def build_metadata(command: str, parameters: Dict[str, Any], preset: Optional[str] = None) -> Dict[str, Any]:
    """Record that reproduces a run: command, preset and every resolved parameter."""
    return {
        "tool": TOOL_NAME,
        "version": APP_VERSION,
        "command": command,
        "preset": preset,
        "seed": parameters.get("seed"),
        "parameters": dict(sorted(parameters.items())),
    }


def render_csv(table: Table, metadata: Dict[str, Any]) -> str:
    """CSV text: '#'-prefixed metadata block, header row, data rows."""
    buffer = io.StringIO()
    buffer.write(f"# tool: {metadata['tool']} {metadata['version']}\n")
    buffer.write(f"# command: {metadata['command']}\n")
    if metadata.get("preset"):
        buffer.write(f"# preset: {metadata['preset']}\n")
    for key, value in metadata["parameters"].items():
        buffer.write(f"# {key} = {format_cell(value)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([format_cell(v) for v in row])
    return buffer.getvalue()


def sidecar_path(out: Path) -> Path:
    """'fig4.csv' → 'fig4.meta.json'."""
    return out.with_suffix(".meta.json")


def _write_atomic(path: Path, text: str) -> None:
    """Write through a temp file in the same directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_outputs(table: Table, metadata: Dict[str, Any], out: Path) -> Path:
    """Write the CSV and its metadata sidecar; returns the sidecar path."""
    out = Path(out)
    meta_path = sidecar_path(out)
    _write_atomic(out, render_csv(table, metadata))
    _write_atomic(meta_path, json.dumps(metadata, indent=2, ensure_ascii=False) + "\n")
    log.info("Wrote %d rows to %s (metadata %s)", len(table.rows), out, meta_path)
    return meta_path


def read_metadata(path: Path) -> Dict[str, Any]:
    """Load a sidecar written by write_outputs."""
    with open(path, "r", encoding="utf-8") as f:
        metadata = json.load(f)
    if metadata.get("tool") != TOOL_NAME or "command" not in metadata:
        raise ValueError(f"{path}: not an {TOOL_NAME} metadata record")
    return metadata
