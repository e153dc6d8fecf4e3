"""Persistent cache of computed invariants, keyed by canonical problem strings."""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from pathlib import Path

log = logging.getLogger(__name__)

CACHE_FORMAT = 1
ENV_VAR = "HQ_CACHE"


class CoefficientCache:
    """A versioned JSON map ``canonical string -> int``.

    Reads are lock-free; writes and saves are serialized.  A file that cannot
    be parsed is renamed aside and the cache starts empty; a file written by a
    different format or library version is ignored with a warning.
    """

    def __init__(self, path: str | os.PathLike | None = None, version: str | None = None):
        from quantumhorn import __version__

        self.path = Path(path) if path is not None else None
        self.version = version or __version__
        self._data: dict[str, int] = {}
        self._lock = threading.Lock()
        self.dirty = False
        self.quarantined: Path | None = None
        if self.path is not None and self.path.exists():
            self._load()

    @classmethod
    def from_env(cls, default: str | None = None) -> "CoefficientCache":
        return cls(os.environ.get(ENV_VAR, default))

    def _load(self):
        try:
            payload = json.loads(self.path.read_text())
            if not isinstance(payload, dict) or not isinstance(payload.get("entries"), dict):
                raise ValueError("missing entries table")
            entries = payload["entries"]
            if not all(isinstance(k, str) and isinstance(v, int) for k, v in entries.items()):
                raise ValueError("entries must map strings to integers")
        except (ValueError, OSError) as exc:
            target = self.path.with_name(f"{self.path.name}.corrupt-{int(time.time() * 1000)}")
            self.path.rename(target)
            self.quarantined = target
            log.warning("cache %s is unreadable (%s); moved to %s and rebuilding", self.path, exc, target)
            return
        if payload.get("format") != CACHE_FORMAT or payload.get("version") != self.version:
            log.warning("cache %s was written by format %s version %s; ignoring it",
                        self.path, payload.get("format"), payload.get("version"))
            return
        self._data = dict(entries)

    def get(self, key: str) -> int | None:
        return self._data.get(key)

    def put(self, key: str, value: int):
        with self._lock:
            if self._data.get(key) != value:
                self._data[key] = value
                self.dirty = True

    def __contains__(self, key: str) -> bool:
        return key in self._data

    def __len__(self) -> int:
        return len(self._data)

    def clear(self):
        with self._lock:
            self._data.clear()
            self.dirty = True

    def save(self):
        if self.path is None:
            return
        with self._lock:
            payload = {"format": CACHE_FORMAT, "version": self.version,
                       "entries": dict(sorted(self._data.items()))}
            tmp = self.path.with_name(self.path.name + ".tmp")
            self.path.parent.mkdir(parents=True, exist_ok=True)
            tmp.write_text(json.dumps(payload, indent=0))
            os.replace(tmp, self.path)
            self.dirty = False


_active: CoefficientCache | None = None


def active_cache() -> CoefficientCache | None:
    return _active


def set_active_cache(cache: CoefficientCache | None) -> CoefficientCache | None:
    """Install ``cache`` for the engines to consult; returns the previous one."""
    global _active
    previous, _active = _active, cache
    return previous
