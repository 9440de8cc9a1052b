"""Service and source configuration files (JSON)."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .keywords import DEFAULT_TOKENIZER, TokenizerConfig

SOURCE_KINDS = ("pangaea", "stac", "publications")

DEFAULT_PORT = 8080
DEFAULT_CLOUD_K = 100
DEFAULT_HARVEST_LIMIT = 100

# Collections endpoint of the DLR Earth Observation STAC API.
DEFAULT_STAC_ENDPOINT = "https://geoservice.dlr.de/eoc/ogc/stac/v1/collections/"


@dataclass
class SourceConfig:
    name: str
    kind: str
    endpoint: str = ""
    organization: str = ""
    limit: int = DEFAULT_HARVEST_LIMIT


@dataclass
class ServiceConfig:
    port: int = DEFAULT_PORT
    graph: str = ""
    cloud_k: int = DEFAULT_CLOUD_K
    tokenizer_path: str = ""
    cors_origins: list[str] = field(default_factory=lambda: ["*"])
    sources_path: str = ""
    tokenizer: TokenizerConfig = DEFAULT_TOKENIZER


def _load_json(path: str | Path, what: str):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read {what} {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{what} {path} is not valid JSON: {exc}") from exc


def load_sources_config(path: str | Path) -> list[SourceConfig]:
    """Read the source list: [{name, kind, endpoint, organization, limit}]."""
    raw = _load_json(path, "sources config")
    if not isinstance(raw, list):
        raise ConfigError(f"sources config {path} must be a JSON array")
    sources = []
    seen = set()
    for entry in raw:
        if not isinstance(entry, dict):
            raise ConfigError("each source must be an object")
        name = entry.get("name")
        if not isinstance(name, str) or not name.strip() or "/" in name:
            raise ConfigError(f"invalid source name {name!r}")
        if name in seen:
            raise ConfigError(f"duplicate source name {name!r}")
        seen.add(name)
        kind = entry.get("kind")
        if kind not in SOURCE_KINDS:
            raise ConfigError(f"source {name}: kind must be one of {SOURCE_KINDS}, got {kind!r}")
        limit = entry.get("limit", DEFAULT_HARVEST_LIMIT)
        if not isinstance(limit, int) or isinstance(limit, bool) or limit < 1:
            raise ConfigError(f"source {name}: limit must be a positive integer")
        organization = entry.get("organization", "")
        if not isinstance(organization, str):
            raise ConfigError(f"source {name}: organization must be a string")
        endpoint = entry.get("endpoint", "")
        if not isinstance(endpoint, str):
            raise ConfigError(f"source {name}: endpoint must be a string")
        sources.append(
            SourceConfig(
                name=name.strip(),
                kind=kind,
                endpoint=endpoint,
                organization=organization,
                limit=limit,
            )
        )
    return sources


def load_tokenizer_config(path: str | Path) -> TokenizerConfig:
    raw = _load_json(path, "tokenizer config")
    if not isinstance(raw, dict):
        raise ConfigError(f"tokenizer config {path} must be a JSON object")
    stopwords = raw.get("stopwords")
    if stopwords is not None and (
        not isinstance(stopwords, list) or any(not isinstance(w, str) for w in stopwords)
    ):
        raise ConfigError("stopwords must be a list of strings")
    min_len = raw.get("min_token_length", 3)
    if not isinstance(min_len, int) or isinstance(min_len, bool) or min_len < 1:
        raise ConfigError("min_token_length must be a positive integer")
    lowercase = raw.get("lowercase", True)
    if not isinstance(lowercase, bool):
        raise ConfigError("lowercase must be a boolean")
    kwargs = {"min_token_length": min_len, "lowercase": lowercase}
    if stopwords is not None:
        kwargs["stopwords"] = frozenset(stopwords)
    return TokenizerConfig(**kwargs)


def load_service_config(path: str | Path) -> ServiceConfig:
    """Read the service config, validating ranges and referenced paths."""
    raw = _load_json(path, "service config")
    if not isinstance(raw, dict):
        raise ConfigError(f"service config {path} must be a JSON object")
    base = Path(path).parent

    port = raw.get("port", DEFAULT_PORT)
    if not isinstance(port, int) or isinstance(port, bool) or not 1 <= port <= 65535:
        raise ConfigError(f"port must be an integer in [1, 65535], got {port!r}")

    cloud_k = raw.get("cloud_k", DEFAULT_CLOUD_K)
    if not isinstance(cloud_k, int) or isinstance(cloud_k, bool) or cloud_k < 1:
        raise ConfigError(f"cloud_k must be a positive integer, got {cloud_k!r}")

    cors = raw.get("cors_origins", ["*"])
    if not isinstance(cors, list) or any(not isinstance(o, str) for o in cors):
        raise ConfigError("cors_origins must be a list of strings")

    def resolve(name: str) -> str:
        value = raw.get(name, "")
        if not value:
            return ""
        if not isinstance(value, str):
            raise ConfigError(f"{name} must be a string path")
        resolved = Path(value)
        if not resolved.is_absolute():
            resolved = base / resolved
        if not resolved.exists():
            raise ConfigError(f"{name} path does not exist: {resolved}")
        return str(resolved)

    tokenizer_path = resolve("tokenizer")
    tokenizer = load_tokenizer_config(tokenizer_path) if tokenizer_path else DEFAULT_TOKENIZER

    return ServiceConfig(
        port=port,
        graph=resolve("graph"),
        cloud_k=cloud_k,
        tokenizer_path=tokenizer_path,
        cors_origins=list(cors),
        sources_path=resolve("sources"),
        tokenizer=tokenizer,
    )


def effective_port(config: ServiceConfig) -> int:
    """Config port, overridable by the VESA_PORT environment variable."""
    override = os.environ.get("VESA_PORT")
    if override is None:
        return config.port
    try:
        port = int(override)
    except ValueError as exc:
        raise ConfigError(f"VESA_PORT must be an integer, got {override!r}") from exc
    if not 1 <= port <= 65535:
        raise ConfigError(f"VESA_PORT out of range: {port}")
    return port
