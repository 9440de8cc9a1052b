"""Timestamp parsing and formatting helpers.

Source metadata mixes RFC 3339 variants: "Z" suffixes, numeric offsets, and
optional fractional seconds. Everything is normalized to timezone-aware UTC
datetimes internally; the original strings are kept by callers that need to
echo source values verbatim.
"""

from __future__ import annotations

from datetime import datetime, timezone

from .errors import FieldError


def parse_timestamp(text: str) -> datetime:
    """Parse an RFC 3339 timestamp into an aware UTC datetime.

    Accepts "Z" or numeric UTC offsets and optional fractional seconds.
    Raises FieldError on anything else.
    """
    if not isinstance(text, str) or not text.strip():
        raise FieldError(f"invalid timestamp: {text!r}")
    candidate = text.strip()
    if candidate.endswith(("Z", "z")):
        candidate = candidate[:-1] + "+00:00"
    try:
        parsed = datetime.fromisoformat(candidate)
    except ValueError as exc:
        raise FieldError(f"invalid timestamp: {text!r}") from exc
    if parsed.tzinfo is None:
        # Naive timestamps are taken as UTC; sources omit offsets occasionally.
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def isoformat_utc(value: datetime) -> str:
    """Canonical RFC 3339 rendering with a +00:00 offset."""
    if value.tzinfo is None:
        value = value.replace(tzinfo=timezone.utc)
    return value.astimezone(timezone.utc).isoformat()
