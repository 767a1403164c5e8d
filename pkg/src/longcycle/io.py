"""JSON readers for partitioned cacti and cactus trees with located errors."""

from __future__ import annotations

import json

import jsonschema

from .bijection import CactusTree, MalformedTree
from .cactus import PartitionedCactus


class InputError(ValueError):
    """Malformed input file; the message names the offending location."""


_int_list = {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1}

PARTITIONED_CACTUS_SCHEMA = {
    "type": "object",
    "required": ["alphas", "partitions"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "r": {"type": "integer", "minimum": 2},
        "alphas": {"type": "array", "items": _int_list, "minItems": 2},
        "partitions": {"type": "array", "items": {"type": "array", "items": _int_list, "minItems": 1}},
    },
}

CACTUS_TREE_SCHEMA = {
    "type": "object",
    "required": ["r", "root", "vertices", "polygons"],
    "properties": {
        "r": {"type": "integer", "minimum": 2},
        "root": {"type": "integer", "minimum": 0},
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "color", "children"],
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "color": {"type": "integer", "minimum": 1},
                    "children": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                },
            },
        },
        "polygons": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "arity", "attach", "descendants", "symbol"],
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "arity": {"type": "integer", "minimum": 1},
                    "attach": {"type": "integer", "minimum": 0},
                    "descendants": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "symbol": {"type": "integer"},
                },
            },
        },
    },
}


def _load(text: str, schema: dict, what: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    err = jsonschema.exceptions.best_match(jsonschema.Draft7Validator(schema).iter_errors(doc))
    if err is not None:
        raise InputError(f"{what}: schema error at {err.json_path}: {err.message}")
    return doc


def load_partitioned_cactus(text: str) -> PartitionedCactus:
    doc = _load(text, PARTITIONED_CACTUS_SCHEMA, "partitioned cactus")
    try:
        pc = PartitionedCactus.from_dict(doc)
    except ValueError as exc:
        raise InputError(f"partitioned cactus: {exc}") from exc
    for key in ("n", "r"):
        if key in doc and doc[key] != getattr(pc, key):
            raise InputError(f"partitioned cactus: $.{key}={doc[key]} disagrees with the factors")
    return pc


def load_cactus_tree(text: str) -> CactusTree:
    doc = _load(text, CACTUS_TREE_SCHEMA, "cactus tree")
    try:
        return CactusTree.from_dict(doc)
    except MalformedTree as exc:
        raise InputError(f"cactus tree: {exc}") from exc


def load_any(text: str):
    """A partitioned cactus or a cactus tree, told apart by their keys."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if isinstance(doc, dict) and "polygons" in doc:
        return load_cactus_tree(text)
    return load_partitioned_cactus(text)
