"""Per-kind node attribute schemas.

Every source is normalized into a common attribute shape before it reaches
the graph; this module is the single place that shape is enforced. Known
fields are type- and range-checked, unknown extra attributes pass through
verbatim because source metadata is heterogeneous.
"""

from __future__ import annotations

from typing import Any

from .errors import SchemaViolation
from .timeutil import parse_timestamp

_SCALARS = (str, int, float, bool, type(None))


def _check_json_value(value: Any, path: str) -> None:
    if isinstance(value, _SCALARS):
        return
    if isinstance(value, list):
        for i, item in enumerate(value):
            _check_json_value(item, f"{path}[{i}]")
        return
    if isinstance(value, dict):
        for key, item in value.items():
            if not isinstance(key, str):
                raise SchemaViolation(f"{path}: non-string key {key!r}")
            _check_json_value(item, f"{path}.{key}")
        return
    raise SchemaViolation(f"{path}: unsupported value type {type(value).__name__}")


def _require_str(attrs: dict, field: str, *, required: bool = False, non_empty: bool = False) -> None:
    if field not in attrs:
        if required:
            raise SchemaViolation(f"missing required attribute {field!r}")
        return
    value = attrs[field]
    if not isinstance(value, str):
        raise SchemaViolation(f"{field} must be a string, got {type(value).__name__}")
    if non_empty and not value.strip():
        raise SchemaViolation(f"{field} must be non-empty")


def _require_str_list(attrs: dict, field: str) -> None:
    if field not in attrs:
        return
    value = attrs[field]
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise SchemaViolation(f"{field} must be a list of strings")


def _check_temporal_coverage(value: Any) -> None:
    if not isinstance(value, dict):
        raise SchemaViolation("temporal_coverage must be an object")
    start = value.get("start")
    end = value.get("end")
    if start is None and end is None:
        raise SchemaViolation("temporal_coverage needs at least one bound")
    parsed_start = parse_timestamp(start) if start is not None else None
    parsed_end = parse_timestamp(end) if end is not None else None
    if parsed_start is not None and parsed_end is not None and parsed_start > parsed_end:
        raise SchemaViolation("temporal_coverage start is after end")


def _check_location(value: Any) -> None:
    if not isinstance(value, dict):
        raise SchemaViolation("location must be an object")
    bounds = {}
    for field in (
        "west_bound_longitude",
        "east_bound_longitude",
        "north_bound_latitude",
        "south_bound_latitude",
    ):
        raw = value.get(field)
        if not isinstance(raw, (int, float)) or isinstance(raw, bool):
            raise SchemaViolation(f"location.{field} must be a number")
        bounds[field] = float(raw)
    for field in ("mean_latitude", "mean_longitude"):
        if field in value and (not isinstance(value[field], (int, float)) or isinstance(value[field], bool)):
            raise SchemaViolation(f"location.{field} must be a number")
    for field in ("west_bound_longitude", "east_bound_longitude"):
        if not -180.0 <= bounds[field] <= 180.0:
            raise SchemaViolation(f"location.{field} out of [-180, 180]")
    for field in ("north_bound_latitude", "south_bound_latitude"):
        if not -90.0 <= bounds[field] <= 90.0:
            raise SchemaViolation(f"location.{field} out of [-90, 90]")
    if bounds["south_bound_latitude"] > bounds["north_bound_latitude"]:
        raise SchemaViolation("location south bound is north of the north bound")


def _validate_dataset(attrs: dict) -> None:
    _require_str(attrs, "title", required=True, non_empty=True)
    _require_str(attrs, "organization", required=True, non_empty=True)
    _require_str(attrs, "source_key", required=True, non_empty=True)
    _require_str(attrs, "abstract")
    _require_str(attrs, "doi")
    _require_str(attrs, "mission")
    if "publication_date" in attrs:
        parse_timestamp(attrs["publication_date"])
    if "temporal_coverage" in attrs:
        _check_temporal_coverage(attrs["temporal_coverage"])
    if "location" in attrs:
        _check_location(attrs["location"])
    _require_str_list(attrs, "authors")
    _require_str_list(attrs, "keywords")


def _validate_corpus(attrs: dict) -> None:
    _require_str(attrs, "name", required=True, non_empty=True)


def _validate_author(attrs: dict) -> None:
    _require_str(attrs, "name", required=True, non_empty=True)
    _require_str(attrs, "organization")


def _validate_keyword(attrs: dict) -> None:
    _require_str(attrs, "term", required=True, non_empty=True)


def _validate_publication(attrs: dict) -> None:
    _require_str(attrs, "title", required=True, non_empty=True)
    _require_str(attrs, "doi")
    _require_str_list(attrs, "keywords")
    _require_str_list(attrs, "mission_mentions")
    _require_str_list(attrs, "related_dataset_keys")


_VALIDATORS = {
    "Corpus": _validate_corpus,
    "Dataset": _validate_dataset,
    "STACCollection": _validate_dataset,
    "Author": _validate_author,
    "Keyword": _validate_keyword,
    "Publication": _validate_publication,
}


def validate_node_attrs(kind: str, attrs: dict) -> None:
    """Raise SchemaViolation unless attrs conform to the schema for kind.

    Wraps timestamp FieldErrors so graph callers see a single error type.
    """
    if not isinstance(attrs, dict):
        raise SchemaViolation("attrs must be a mapping")
    _check_json_value(attrs, "attrs")
    validator = _VALIDATORS.get(kind)
    if validator is None:
        raise SchemaViolation(f"unknown node kind {kind!r}")
    try:
        validator(attrs)
    except SchemaViolation:
        raise
    except Exception as exc:  # FieldError from timestamp parsing, mostly
        raise SchemaViolation(str(exc)) from exc
