"""Content-addressed store of solved trivialisation problems.

Keys are sha256 digests of the canonical JSON form of (group table, psi,
subgroup, solver order); values hold the solution set, the class count and the
admissibility verdict.  Entries are written once and never rewritten.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

__all__ = ["Catalog", "canonical", "content_key", "default_location"]


def canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True).encode()


def content_key(obj) -> str:
    return hashlib.sha256(canonical(obj)).hexdigest()


def default_location() -> Path:
    env = os.environ.get("PICARDIUM_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "picardium"


class Catalog:
    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_location()

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def get(self, key_obj) -> dict | None:
        p = self._path(content_key(key_obj))
        try:
            entry = json.loads(p.read_bytes())
        except (OSError, json.JSONDecodeError):
            return None
        if entry.get("key") != key_obj:
            return None
        return entry["value"]

    def put(self, key_obj, value) -> bool:
        """Store ``value`` unless an entry exists; returns whether a write happened."""
        key = content_key(key_obj)
        p = self._path(key)
        if p.exists():
            return False
        self.root.mkdir(parents=True, exist_ok=True)
        body = canonical({"key": key_obj, "value": value})
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(body)
            try:
                os.link(tmp, p)  # fails if another writer won the race
            except FileExistsError:
                return False
        finally:
            os.unlink(tmp)
        return True

    def entries(self) -> list:
        if not self.root.is_dir():
            return []
        out = []
        for p in sorted(self.root.glob("*.json")):
            if p.name.startswith(".tmp-"):
                continue
            try:
                entry = json.loads(p.read_bytes())
                ok = content_key(entry["key"]) == p.stem
            except (OSError, json.JSONDecodeError, KeyError, TypeError):
                entry, ok = None, False
            out.append((p.stem, entry, ok))
        return out

    def gc(self, everything: bool = False) -> list:
        """Remove temporaries and entries whose digest no longer matches; ``everything`` empties the store."""
        removed = []
        if not self.root.is_dir():
            return removed
        for p in sorted(self.root.glob(".tmp-*")):
            p.unlink()
            removed.append(p.name)
        for key, _, ok in self.entries():
            if everything or not ok:
                self._path(key).unlink()
                removed.append(f"{key}.json")
        return removed
