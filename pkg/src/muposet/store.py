"""Persistent memo of principal Möbius values.

File format (plain text)::

    muposet v1 canonical=1
    <perm-text>\t<integer>
    ...

Entries are sorted by length, then by the permutation read as a sequence of
integers.  With ``canonical=1`` every key is the lexicographically least
member of its symmetry orbit.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable, Optional

from .perm import canonical, format_perm, parse, PermutationError

FORMAT_NAME = "muposet"
FORMAT_VERSION = "v1"
ENV_VAR = "MUPOSET_CACHE"


class CacheError(Exception):
    """Malformed or incompatible cache file."""


class CacheConflict(CacheError):
    """Two different μ values were recorded for the same permutation."""


class MuCache:
    def __init__(self, canonical: bool = True):
        self.canonical = canonical
        self._entries: dict[tuple, int] = {}
        # raw-key front memo; saves re-canonicalizing hot lookups
        self._raw: dict[tuple, int] = {}

    def key(self, pi) -> tuple:
        p = tuple(pi)
        return canonical(p) if self.canonical else p

    def get(self, pi) -> Optional[int]:
        p = tuple(pi)
        v = self._raw.get(p)
        if v is not None:
            return v
        v = self._entries.get(self.key(p))
        if v is not None:
            self._raw[p] = v
        return v

    def put(self, pi, mu: int) -> None:
        p = tuple(pi)
        mu = int(mu)
        k = self.key(p)
        old = self._entries.get(k)
        if old is not None and old != mu:
            raise CacheConflict(f"mu({format_perm(p)}): cached {old}, new {mu}")
        self._entries[k] = mu
        self._raw[p] = mu

    def __contains__(self, pi) -> bool:
        return self.get(pi) is not None

    def __len__(self) -> int:
        return len(self._entries)

    def items(self):
        return self._entries.items()

    def update(self, entries: Iterable) -> None:
        for k, v in entries:
            self.put(k, v)

    def merge(self, other: "MuCache") -> None:
        """Fold another cache (e.g. a worker shard) into this one."""
        if other.canonical != self.canonical:
            raise CacheError("cannot merge caches with different canonicalization")
        self.update(other.items())

    def save(self, path) -> None:
        save(self, path)


def load(path) -> MuCache:
    path = Path(path)
    with path.open("r", encoding="ascii") as fh:
        header = fh.readline().strip().split()
        if len(header) != 3 or header[0] != FORMAT_NAME or not header[2].startswith("canonical="):
            raise CacheError(f"{path}: bad header {' '.join(header)!r}")
        if header[1] != FORMAT_VERSION:
            raise CacheError(f"{path}: unsupported version {header[1]}")
        flag = header[2].split("=", 1)[1]
        if flag not in ("0", "1"):
            raise CacheError(f"{path}: bad canonical flag {flag!r}")
        cache = MuCache(canonical=flag == "1")
        for lineno, line in enumerate(fh, 2):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                text, value = line.split("\t")
                p = tuple(parse(text))
                mu = int(value)
            except (ValueError, PermutationError):
                raise CacheError(f"{path}:{lineno}: malformed line {line!r}") from None
            if cache.canonical and canonical(p) != p:
                raise CacheError(f"{path}:{lineno}: key {text} is not canonical")
            cache.put(p, mu)
    return cache


def save(cache: MuCache, path) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    keys = sorted(cache._entries, key=lambda p: (len(p), p))
    with tmp.open("w", encoding="ascii") as fh:
        fh.write(f"{FORMAT_NAME} {FORMAT_VERSION} canonical={int(cache.canonical)}\n")
        for k in keys:
            fh.write(f"{format_perm(k)}\t{cache._entries[k]}\n")
    os.replace(tmp, path)


def open_cache(path=None) -> tuple[MuCache, Optional[Path]]:
    """Load the cache named by ``path`` or ``$MUPOSET_CACHE``; empty if the
    file does not exist yet.  Returns the cache and the resolved path."""
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    if path is None:
        return MuCache(), None
    path = Path(path)
    if path.exists():
        return load(path), path
    return MuCache(), path
