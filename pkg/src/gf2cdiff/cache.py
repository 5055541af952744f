"""On-disk cache of serialized results.

Entries are JSON envelopes ``{"key", "created_at", "value"}`` stored under a
SHA-256 of the inputs plus :data:`CODE_VERSION`, so changing an algorithm
and bumping the version invalidates everything written before.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass
from pathlib import Path

CODE_VERSION = "gf2cdiff-1"


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(Path.home(), ".cache")
    return Path(base) / "gf2cdiff"


def cache_key(modulus: str, d: int | None, c: str | None, op: str,
              extra: str = "") -> str:
    payload = json.dumps([modulus, d, c, op, extra, CODE_VERSION])
    return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    key: str
    value: dict | list
    created_at: float


class ResultCache:
    """Directory of cache entries; a missing or corrupt entry is a miss."""

    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_cache_dir()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str) -> CacheEntry | None:
        try:
            raw = json.loads(self._path(key).read_text())
        except (OSError, ValueError):
            return None
        if raw.get("key") != key:
            return None
        return CacheEntry(key, raw["value"], raw["created_at"])

    def put(self, key: str, value) -> CacheEntry:
        entry = CacheEntry(key, value, time.time())
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        tmp.write_text(json.dumps({"key": key, "created_at": entry.created_at,
                                   "value": value}, sort_keys=True))
        os.replace(tmp, path)
        return entry
