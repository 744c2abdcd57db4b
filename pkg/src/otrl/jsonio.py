"""JSON reading, writing and schema validation for the command line."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import jsonschema

from .errors import OTRLError
from .ground import GroundSpace
from .measures import DiscreteMeasure, measure_from_json, measure_to_json

POINT_SCHEMA = {
    "oneOf": [
        {"const": "q"},
        {
            "type": "object",
            "properties": {"x": {"type": "number", "minimum": 0, "maximum": 1}},
            "required": ["x"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {
                "v": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
            },
            "required": ["v"],
            "additionalProperties": False,
        },
    ]
}

SPACE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "GroundSpace",
    "type": "object",
    "properties": {
        "kind": {"enum": ["interval", "interval_q", "plane", "plane_q"]},
        "D": {"type": "number", "exclusiveMinimum": 1},
    },
    "required": ["kind"],
    "additionalProperties": False,
    "if": {"properties": {"kind": {"const": "interval_q"}}},
    "then": {"required": ["kind", "D"]},
    "else": {"not": {"required": ["D"]}},
}

MEASURE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "DiscreteMeasure",
    "type": "object",
    "properties": {
        "space": SPACE_SCHEMA,
        "atoms": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {"point": POINT_SCHEMA, "w": {"type": "number", "minimum": 0}},
                "required": ["point", "w"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["atoms"],
    "additionalProperties": False,
}

_CHECK_SCHEMA = {
    "type": "object",
    "properties": {
        "desc": {"type": "string"},
        "anchor": {"type": "string"},
        "computed": {"type": "array"},
        "expected": {"type": "array"},
        "tol": {"type": "number"},
        "pass": {"type": "boolean"},
    },
    "required": ["desc", "anchor", "computed", "expected", "tol", "pass"],
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "SuiteReport",
    "type": "object",
    "properties": {
        "suite": {"type": "string"},
        "checks": {"type": "array", "items": _CHECK_SCHEMA},
        "pass": {"type": "boolean"},
        "suites": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "suite": {"type": "string"},
                    "checks": {"type": "array", "items": _CHECK_SCHEMA},
                    "pass": {"type": "boolean"},
                },
                "required": ["suite", "checks", "pass"],
            },
        },
    },
    "required": ["suite", "checks", "pass"],
}

SCHEMAS = {"GroundSpace": SPACE_SCHEMA, "DiscreteMeasure": MEASURE_SCHEMA, "SuiteReport": REPORT_SCHEMA}


def _float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if s.lstrip("-").isdigit():
        s += ".0"
    return s


def dumps(obj: Any, indent: int | None = 2, _level: int = 0) -> str:
    """Serialise JSON with every float written to 17 significant digits."""
    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    end = "" if indent is None else "\n" + " " * (indent * _level)
    sep = ", " if indent is None else ","
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)) and not isinstance(obj, float):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        # short numeric rows stay on one line
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj) and len(obj) <= 8:
            return "[" + ", ".join(dumps(v, None) for v in obj) + "]"
        items = [f"{pad}{dumps(v, indent, _level + 1)}" for v in obj]
        return "[" + sep.join(items) + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


class InputError(OTRLError):
    """Unreadable or malformed user input."""


def parse_json_text(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load_json(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text()
    except FileNotFoundError:
        raise InputError(f"file not found: {path}") from None
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse_json_text(text, str(path))


def load_json_arg(arg: str) -> Any:
    """Inline JSON if ``arg`` looks like an object, otherwise a file path."""
    if arg.lstrip().startswith(("{", "[", '"')):
        return parse_json_text(arg, "argument")
    return load_json(arg)


def validate(obj: Any, schema_name: str, source: str) -> None:
    try:
        jsonschema.validate(obj, SCHEMAS[schema_name])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise InputError(f"{source}: invalid {schema_name} at {where}: {exc.message}") from None


def read_space(arg: str) -> GroundSpace:
    obj = load_json_arg(arg)
    validate(obj, "GroundSpace", "--space")
    return GroundSpace.from_json(obj)


def read_measure(path: str, space: GroundSpace | None = None) -> DiscreteMeasure:
    obj = load_json(path)
    validate(obj, "DiscreteMeasure", path)
    return measure_from_json(obj, space)


def write_measure(mu: DiscreteMeasure) -> str:
    return dumps(measure_to_json(mu))
