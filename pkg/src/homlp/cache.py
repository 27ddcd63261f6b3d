"""A directory of JSON result records keyed by a content hash of the request.

Each record stores the canonical request text next to the result, so a
hit can be checked against the exact request.  Audit mode recomputes a
deterministic sample of hits and compares them with the stored result.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from .errors import HomlpError

__all__ = ["InstanceKey", "ResultCache", "CacheAuditError", "default_cache_dir"]

# fields that legitimately differ between two runs of the same computation
VOLATILE_FIELDS = ("elapsed_ms",)


class CacheAuditError(HomlpError):
    """A cached result differs from a fresh recomputation."""


@dataclass(frozen=True)
class InstanceKey:
    op: str
    args: dict

    @property
    def text(self) -> str:
        return json.dumps({"op": self.op, "args": self.args}, sort_keys=True, separators=(",", ":"))

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.text.encode()).hexdigest()


def default_cache_dir() -> Path:
    env = os.environ.get("HOMLP_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "homlp"


def _stable(result: dict) -> dict:
    return {k: v for k, v in result.items() if k not in VOLATILE_FIELDS}


class ResultCache:
    def __init__(self, directory: Path | str | None = None, audit_rate: float = 0.0):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        if not 0 <= audit_rate <= 1:
            raise ValueError("audit_rate must lie in [0, 1]")
        self.audit_rate = audit_rate
        self.hits = 0
        self.audits = 0

    def _path(self, key: InstanceKey) -> Path:
        return self.directory / f"{key.digest}.json"

    def get(self, key: InstanceKey) -> dict | None:
        path = self._path(key)
        try:
            record = json.loads(path.read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            return None
        if record.get("key") != key.text:
            return None
        return record["result"]

    def put(self, key: InstanceKey, result: dict) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(key)
        tmp = path.with_suffix(".tmp")
        # key order of the result is kept so a hit prints exactly like the original
        tmp.write_text(json.dumps({"key": key.text, "result": result}, indent=1) + "\n")
        tmp.replace(path)

    def _audited(self, key: InstanceKey) -> bool:
        # deterministic sample: the leading 32 bits of the digest against the rate
        return int(key.digest[:8], 16) < self.audit_rate * 2**32

    def fetch(self, key: InstanceKey, compute: Callable[[], dict]) -> tuple[dict, bool]:
        """Cached result or a fresh one (stored); the flag says whether it was a hit."""
        cached = self.get(key)
        if cached is None:
            result = compute()
            self.put(key, result)
            return result, False
        self.hits += 1
        if self._audited(key):
            self.audits += 1
            fresh = compute()
            if _stable(fresh) != _stable(cached):
                raise CacheAuditError(f"cached result for {key.text} differs from recomputation")
        return cached, True


def canonical(obj: Any) -> Any:
    """JSON round trip, so stored and fresh results compare as plain data."""
    return json.loads(json.dumps(obj))
