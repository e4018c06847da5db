"""Deterministic experiment reports.

A report is a plain tree of dicts/lists/strings/numbers with a fixed field
order.  Serialization is deterministic: floats are printed with 17
significant digits, complex values as [re, im] pairs, and no timestamps or
environment data enter the body, so identical configs produce byte-identical
output.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

__all__ = ["Report", "emit_report", "format_float"]


def format_float(x: float) -> str:
    return f"{float(x):.17g}"


@dataclass
class Report:
    kind: str
    inputs: dict = field(default_factory=dict)
    scalars: list = field(default_factory=list)
    sequences: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add_scalar(self, expression: str, value, normalization: str = "", **extra) -> None:
        entry = {"expression": expression, "value": value}
        if normalization:
            entry["normalization"] = normalization
        entry.update(extra)
        self.scalars.append(entry)

    def add_sequence(
        self, name: str, expression: str, normalization: str, points, values
    ) -> None:
        self.sequences.append(
            {
                "name": name,
                "expression": expression,
                "normalization": normalization,
                "points": list(np.asarray(points).tolist()),
                "values": np.asarray(values).tolist(),
            }
        )

    def add_check(self, name: str, lhs, rhs) -> None:
        self.checks.append(
            {
                "name": name,
                "lhs": lhs,
                "rhs": rhs,
                "abs_discrepancy": abs(complex(lhs) - complex(rhs)),
            }
        )

    def body(self) -> dict:
        return {
            "kind": self.kind,
            "inputs": self.inputs,
            "scalars": self.scalars,
            "sequences": self.sequences,
            "checks": self.checks,
            "notes": self.notes,
        }


def _write_json(obj, out: io.StringIO) -> None:
    if obj is None:
        out.write("null")
    elif obj is True:
        out.write("true")
    elif obj is False:
        out.write("false")
    elif isinstance(obj, str):
        out.write('"')
        for ch in obj:
            if ch in '"\\':
                out.write("\\" + ch)
            elif ch == "\n":
                out.write("\\n")
            elif ord(ch) < 0x20:
                out.write(f"\\u{ord(ch):04x}")
            else:
                out.write(ch)
        out.write('"')
    elif isinstance(obj, (int, np.integer)):
        out.write(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.write(format_float(float(obj)))
    elif isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        out.write(f"[{format_float(z.real)}, {format_float(z.imag)}]")
    elif isinstance(obj, dict):
        out.write("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.write(", ")
            _write_json(str(key), out)
            out.write(": ")
            _write_json(value, out)
        out.write("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.write("[")
        for i, value in enumerate(obj):
            if i:
                out.write(", ")
            _write_json(value, out)
        out.write("]")
    else:
        raise ParameterError(f"cannot serialize value of type {type(obj).__name__}")


def _csv_cell(value) -> list[str]:
    z = complex(value)
    return [format_float(z.real), format_float(z.imag)]


def emit_report(report: Report, fmt: str) -> bytes:
    """Serialize a report; fmt is "json" or "csv"."""
    if fmt == "json":
        out = io.StringIO()
        _write_json(report.body(), out)
        out.write("\n")
        return out.getvalue().encode()
    if fmt == "csv":
        lines = ["series,point,value_re,value_im"]
        for scalar in report.scalars:
            cells = _csv_cell(scalar["value"])
            lines.append(",".join([_csv_name(scalar["expression"]), "", *cells]))
        for seq in report.sequences:
            for point, value in zip(seq["points"], seq["values"]):
                cells = _csv_cell(value if not isinstance(value, list) else complex(*value))
                lines.append(",".join([_csv_name(seq["name"]), str(point), *cells]))
        return ("\n".join(lines) + "\n").encode()
    raise ParameterError(f"unknown report format {fmt!r}")


def _csv_name(name: str) -> str:
    if any(ch in name for ch in ',"\n'):
        return '"' + name.replace('"', '""') + '"'
    return name
