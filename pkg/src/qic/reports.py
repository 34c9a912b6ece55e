"""Deterministic JSON and CSV rendering for machine-readable reports.

Floats are rendered with 17 significant digits so every 64-bit value
round-trips exactly, and identical inputs always produce identical bytes.
"""

from __future__ import annotations

import json
import math

SCHEMA_VERSION = 1


def format_float(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError(f"cannot render non-finite value {value!r}")
    return format(float(value), ".17g")


def _render(value, indent: int, out: list) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, item) in enumerate(value.items()):
            out.append(f"{pad}  {json.dumps(str(key))}: ")
            _render(item, indent + 1, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(value):
            out.append(pad + "  ")
            _render(item, indent + 1, out)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif value is None:
        out.append("null")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(format_float(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    else:
        raise TypeError(f"cannot render {type(value).__name__} in a report")


def render_json(value) -> str:
    out: list = []
    _render(value, 0, out)
    out.append("\n")
    return "".join(out)


def render_csv(header: list[str], rows: list[list]) -> str:
    """Comma-separated rows with a mandatory header and LF line endings.

    Cell values must not contain commas, quotes, or newlines; floats are
    rendered like JSON numbers.
    """
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, bool):
                text = "true" if cell else "false"
            elif isinstance(cell, float):
                text = format_float(cell)
            elif cell is None:
                text = ""
            else:
                text = str(cell)
            if any(c in text for c in ',"\n'):
                raise ValueError(f"cell {text!r} needs quoting, unsupported")
            cells.append(text)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def envelope(command: str, config: dict, results: dict) -> dict:
    """The uniform report wrapper shared by every CLI subcommand.

    timing_ms stays null in reports so identical invocations produce
    byte-identical files; measured timings go to stderr on request.
    """
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "results": results,
        "timing_ms": None,
    }
