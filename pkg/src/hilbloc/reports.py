"""Deterministic report objects and emitters for the command-line front end.

A report carries the echoed command, the effective configuration, a payload
of results, and any violation flags.  JSON output uses sorted keys and LF
line endings; TSV output is a two-line header/value table over the flattened
payload (dotted paths, list indices), tab-separated and unquoted.  Identical
inputs produce byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction


def jsonable(value):
    """Recursively convert a result value to JSON-representable form."""
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


@dataclass
class Report:
    command: list
    config: dict
    payload: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "command": list(self.command),
            "config": jsonable(self.config),
            "results": jsonable(self.payload),
            "violations": list(self.violations),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True,
                          separators=(", ", ": ")) + "\n"

    def to_tsv(self) -> str:
        flat = {}
        _flatten("", self.as_dict(), flat)
        keys = sorted(flat)
        header = "\t".join(keys)
        row = "\t".join(_tsv_cell(flat[k]) for k in keys)
        return header + "\n" + row + "\n"


def _flatten(prefix: str, value, out: dict):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], out)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flatten(f"{prefix}.{i}" if prefix else str(i), v, out)
    else:
        out[prefix] = value


def _tsv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v).replace("\t", " ").replace("\n", " ")
