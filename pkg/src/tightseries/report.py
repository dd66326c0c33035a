"""Reports shared by the CLI: a status, a payload, and witnesses, rendered
deterministically as JSON or indented text."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field

import numpy as np

from .enumeration import ElementSet

SCHEMA_VERSION = 1


@dataclass
class Report:
    command: str
    status: str  # "pass" | "fail" | "info"
    payload: dict
    witnesses: list = field(default_factory=list)

    def __post_init__(self):
        if self.status not in ("pass", "fail", "info"):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "fail" and not self.witnesses:
            raise ValueError("a failing report needs at least one witness")

    @property
    def exit_code(self) -> int:
        return 1 if self.status == "fail" else 0

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "status": self.status,
            "payload": jsonable(self.payload),
            "witnesses": jsonable(self.witnesses),
        }

    def render(self, fmt: str = "text") -> str:
        obj = self.to_json()
        if fmt == "json":
            return json.dumps(obj, indent=2, sort_keys=True)
        lines = [f"{self.command}: {self.status}"]
        _text(obj["payload"], lines, 0)
        if obj["witnesses"]:
            lines.append("witnesses:")
            _text(obj["witnesses"], lines, 1)
        return "\n".join(lines)


def jsonable(obj):
    """Convert reports, elements and numpy scalars into plain JSON data."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [jsonable(x) for x in obj.tolist()]
    if isinstance(obj, ElementSet):
        return obj.label
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
                if f.repr}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return sorted(str(x) for x in obj)
    if isinstance(obj, (list, tuple)) and not hasattr(obj, "_fields"):
        return [jsonable(x) for x in obj]
    return str(obj)


def _scalar(v) -> bool:
    return not isinstance(v, (dict, list))


def _text(obj, lines: list[str], depth: int):
    pad = "  " * depth
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if _scalar(v):
                lines.append(f"{pad}{k}: {v}")
            elif isinstance(v, list) and all(_scalar(x) for x in v):
                lines.append(f"{pad}{k}: [{', '.join(str(x) for x in v)}]")
            else:
                lines.append(f"{pad}{k}:")
                _text(v, lines, depth + 1)
    elif isinstance(obj, list):
        for item in obj:
            if _scalar(item):
                lines.append(f"{pad}- {item}")
            else:
                lines.append(f"{pad}-")
                _text(item, lines, depth + 1)
    else:
        lines.append(f"{pad}{obj}")
