"""Remote metadata harvesting with paging, retries, and an offline cache.

Raw documents are cached one JSON file per document, one directory per
source, so builds replay byte-identically without network access. The same
directory layout doubles as the fixture format for offline builds.
"""

from __future__ import annotations

import json
import logging
import re
import time
from pathlib import Path
from typing import Any, Callable

import requests

from .errors import NetworkError, RemoteFormatError

logger = logging.getLogger(__name__)

RETRY_ATTEMPTS = 3
RETRY_BASE_DELAY = 1.0
REQUEST_TIMEOUT = 30.0

_UNSAFE_RE = re.compile(r"[^A-Za-z0-9._-]+")


def read_document_dir(path: str | Path) -> list[tuple[str, Any]]:
    """Load every *.json document in a directory, sorted by file name."""
    directory = Path(path)
    documents = []
    for file in sorted(directory.glob("*.json")):
        with open(file, encoding="utf-8") as handle:
            documents.append((file.stem, json.load(handle)))
    return documents


def _document_filename(doc: Any, index: int) -> str:
    key = None
    if isinstance(doc, dict):
        key = doc.get("id") or doc.get("source_key")
    if not isinstance(key, str) or not key.strip():
        key = f"doc-{index:05d}"
    return _UNSAFE_RE.sub("_", key.strip()) + ".json"


def write_document_dir(docs: list[Any], path: str | Path) -> None:
    """Cache raw documents deterministically (stable names, sorted keys)."""
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)
    for index, doc in enumerate(docs):
        target = directory / _document_filename(doc, index)
        target.write_text(
            json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )


def _fetch_json(
    url: str,
    params: dict | None,
    session: requests.Session,
    attempts: int,
    base_delay: float,
    sleep: Callable[[float], None],
) -> Any:
    delay = base_delay
    last_error: Exception | None = None
    for attempt in range(1, attempts + 1):
        try:
            response = session.get(url, params=params, timeout=REQUEST_TIMEOUT)
            response.raise_for_status()
        except requests.RequestException as exc:
            last_error = exc
            logger.warning("fetch %s failed (attempt %d/%d): %s", url, attempt, attempts, exc)
            if attempt < attempts:
                sleep(delay)
                delay *= 2
            continue
        try:
            return response.json()
        except ValueError as exc:
            raise RemoteFormatError(f"{url}: response is not JSON: {exc}") from exc
    raise NetworkError(f"{url}: unreachable after {attempts} attempts: {last_error}")


def _harvest_stac(
    endpoint: str,
    limit: int,
    session: requests.Session,
    attempts: int,
    base_delay: float,
    sleep: Callable[[float], None],
) -> list[Any]:
    docs: list[Any] = []
    url: str | None = endpoint
    while url and len(docs) < limit:
        page = _fetch_json(url, None, session, attempts, base_delay, sleep)
        if not isinstance(page, dict) or not isinstance(page.get("collections"), list):
            raise RemoteFormatError(f"{url}: expected a collections page")
        docs.extend(page["collections"])
        url = None
        for link in page.get("links") or []:
            if isinstance(link, dict) and link.get("rel") == "next" and link.get("href"):
                url = link["href"]
                break
    return docs[:limit]


def _harvest_pangaea(
    endpoint: str,
    limit: int,
    session: requests.Session,
    attempts: int,
    base_delay: float,
    sleep: Callable[[float], None],
) -> list[Any]:
    docs: list[Any] = []
    offset = 0
    while len(docs) < limit:
        page = _fetch_json(
            endpoint, {"offset": offset}, session, attempts, base_delay, sleep
        )
        if not isinstance(page, dict) or not isinstance(page.get("results"), list):
            raise RemoteFormatError(f"{endpoint}: expected a results page")
        results = page["results"]
        if not results:
            break
        docs.extend(results)
        offset += len(results)
    return docs[:limit]


def harvest_remote(
    endpoint: str,
    kind: str,
    limit: int,
    cache_dir: str | Path | None = None,
    session: requests.Session | None = None,
    attempts: int = RETRY_ATTEMPTS,
    base_delay: float = RETRY_BASE_DELAY,
    sleep: Callable[[float], None] = time.sleep,
) -> list[Any]:
    """Fetch at most limit raw documents, following the remote's paging.

    kind "stac" follows rel=next links on collection pages; kind "pangaea"
    advances an offset parameter over result pages. When cache_dir already
    holds documents they are returned without touching the network; a fresh
    harvest writes them there for offline replays.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if kind not in ("pangaea", "stac"):
        raise ValueError(f"unsupported harvest kind {kind!r}")

    if cache_dir is not None:
        cached = read_document_dir(Path(cache_dir)) if Path(cache_dir).is_dir() else []
        if cached:
            logger.info("using %d cached documents from %s", len(cached), cache_dir)
            return [doc for _, doc in cached[:limit]]

    own_session = session is None
    session = session or requests.Session()
    try:
        if kind == "stac":
            docs = _harvest_stac(endpoint, limit, session, attempts, base_delay, sleep)
        else:
            docs = _harvest_pangaea(endpoint, limit, session, attempts, base_delay, sleep)
    finally:
        if own_session:
            session.close()

    if cache_dir is not None:
        write_document_dir(docs, cache_dir)
    return docs
