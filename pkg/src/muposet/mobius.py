"""Downsets and the Möbius function of the permutation pattern poset."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .perm import (
    all_perms,
    canonical,
    children,
    contains,
    corner_decompositions,
    has_long_corner,
    longest_monotone_interval,
)
from .store import MuCache

log = logging.getLogger(__name__)

RECURSIVE = "recursive"
SHORTCUT_LONG_CORNER = "shortcut-long-corner"
SHORTCUT_TRIPLE = "shortcut-triple"
SHORTCUT_STRIP = "shortcut-strip"

DESK_LIMIT = 8
_INT64_HEADROOM = 2**62

# process-wide memo used when callers do not pass their own
DEFAULT_CACHE = MuCache()


@dataclass(frozen=True)
class Downset:
    """The interval [1, source]: every pattern of ``source``, by length."""

    source: tuple
    levels: dict = field(repr=False)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.levels.get(len(p), ())

    def __len__(self) -> int:
        return sum(len(v) for v in self.levels.values())

    def __iter__(self):
        for k in sorted(self.levels):
            yield from sorted(self.levels[k])

    def at_length(self, k: int) -> frozenset:
        return self.levels.get(k, frozenset())

    @property
    def elements(self) -> set:
        return set(self)


def downset(pi: Sequence[int]) -> Downset:
    """Downset of ``pi`` by closing under one-point deletions, level by level."""
    p = tuple(pi)
    levels = {len(p): frozenset([p])}
    current = {p}
    for k in range(len(p) - 1, 0, -1):
        nxt = set()
        for q in current:
            nxt |= children(q)
        levels[k] = frozenset(nxt)
        current = nxt
    return Downset(p, levels)


class _Interval:
    """Strict-containment closure over a downset, as integer bitsets.

    Elements are indexed in order of increasing length, so every element's
    strict lower set only contains smaller indexes.
    """

    def __init__(self, pi: tuple):
        self.top = pi
        self.order: list[tuple] = []
        self.index: dict[tuple, int] = {}
        child_lists: dict[tuple, set] = {}
        current = {pi}
        by_level = [[pi]]
        for _ in range(len(pi) - 1):
            nxt = set()
            for q in current:
                ch = children(q)
                child_lists[q] = ch
                nxt |= ch
            by_level.append(sorted(nxt))
            current = nxt
        for level in reversed(by_level):
            for q in level:
                self.index[q] = len(self.order)
                self.order.append(q)
        self.below: list[int] = [0] * len(self.order)
        for i, q in enumerate(self.order):
            b = 0
            for c in child_lists.get(q, ()):
                ci = self.index[c]
                b |= self.below[ci] | (1 << ci)
            self.below[i] = b
        self._nbytes = (len(self.order) + 7) // 8

    def __len__(self) -> int:
        return len(self.order)

    def mask(self, i: int) -> np.ndarray:
        raw = self.below[i].to_bytes(self._nbytes, "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little", count=len(self.order))
        return bits.view(bool)

    def above(self, i: int) -> list[int]:
        bit = 1 << i
        return [j for j in range(i + 1, len(self.order)) if self.below[j] & bit]

    def solve(self, start: int, known: Optional[dict] = None) -> np.ndarray:
        """μ(order[start], ·) over the whole interval; zero outside [start, top].

        ``known`` maps indexes to values already available (only meaningful
        for ``start == 0``)."""
        values = np.zeros(len(self.order), dtype=np.int64)
        values[start] = 1
        bit = 1 << start
        peak = 1
        for j in range(start + 1, len(self.order)):
            if not self.below[j] & bit:
                continue
            if known is not None and j in known:
                v = known[j]
            else:
                if peak * len(self.order) >= _INT64_HEADROOM:
                    raise OverflowError("Möbius sum may exceed 64-bit range")
                v = -int(values[self.mask(j)].sum())
            values[j] = v
            peak = max(peak, abs(v))
        return values


@dataclass(frozen=True)
class MuResult:
    pi: tuple
    mu: int
    method: str = RECURSIVE


def _principal(p: tuple, cache: MuCache) -> int:
    v = cache.get(p)
    if v is not None:
        return v
    if len(p) == 1:
        cache.put(p, 1)
        return 1
    ds = downset(p)
    total = 0
    missing = False
    for q in ds:
        if q == p:
            continue
        w = cache.get(q)
        if w is None:
            missing = True
            break
        total += w
    if not missing:
        cache.put(p, -total)
        return -total
    iv = _Interval(p)
    known = {}
    for i, q in enumerate(iv.order):
        w = cache.get(q)
        if w is not None:
            known[i] = w
    values = iv.solve(0, known)
    for i, q in enumerate(iv.order):
        if i not in known:
            cache.put(q, int(values[i]))
    return int(values[-1])


def _accelerated(p: tuple, cache: MuCache) -> tuple[int, str]:
    v = cache.get(p)
    if v is not None:
        return v, RECURSIVE
    if has_long_corner(p):
        mu, method = 0, SHORTCUT_LONG_CORNER
    elif longest_monotone_interval(p) >= 3:
        mu, method = 0, SHORTCUT_TRIPLE
    else:
        decs = corner_decompositions(p)
        if decs:
            mu, method = -_accelerated(decs[0][1], cache)[0], SHORTCUT_STRIP
        else:
            return _principal(p, cache), RECURSIVE
    cache.put(p, mu)
    return mu, method


def mu_principal(pi, cache: Optional[MuCache] = None, accelerate: bool = False) -> MuResult:
    """μ(1, π).  Accelerators (the long-corner, monotone-interval and
    one-point-strip lemmas) only short-circuit; they never change the value."""
    p = tuple(pi)
    if cache is None:
        cache = DEFAULT_CACHE
    if accelerate:
        mu, method = _accelerated(p, cache)
        return MuResult(p, mu, method)
    return MuResult(p, _principal(p, cache), RECURSIVE)


def mu(sigma, pi, cache: Optional[MuCache] = None) -> int:
    """μ(σ, π) on the pattern poset."""
    s, p = tuple(sigma), tuple(pi)
    if s == p:
        return 1
    if not contains(s, p):
        return 0
    if len(s) == 1:
        return mu_principal(p, cache).mu
    iv = _Interval(p)
    return int(iv.solve(iv.index[s])[-1])


def mu_plain(sigma, pi) -> int:
    """Textbook recursion over explicit containment tests; no caching across
    calls.  Slow, kept as an independent check on :func:`mu`."""
    s, p = tuple(sigma), tuple(pi)
    if not contains(s, p):
        return 0
    elems = [q for q in downset(p) if contains(s, q)]
    values: dict[tuple, int] = {}
    for q in elems:  # increasing length
        if q == s:
            values[q] = 1
        else:
            values[q] = -sum(v for r, v in values.items() if len(r) < len(q) and contains(r, q))
    return values[p]


def interval_mu_sum(pi, cache: Optional[MuCache] = None) -> int:
    """Σ μ(1, λ) over the closed interval [1, π]; zero whenever |π| ≥ 2."""
    return sum(mu_principal(q, cache).mu for q in downset(pi))


def canonical_reps(n: int) -> list[tuple]:
    return [p for p in all_perms(n) if canonical(p) == p]


# ---------------------------------------------------------------------------
# sweeps

_worker_cache: Optional[MuCache] = None
_worker_accelerate = True


def _init_worker(entries, accelerate):
    global _worker_cache, _worker_accelerate
    _worker_cache = MuCache()
    _worker_cache.update(entries)
    _worker_accelerate = accelerate


def _worker_batch(batch):
    return [(p, mu_principal(p, _worker_cache, _worker_accelerate).mu) for p in batch]


def sweep(max_len: int, cache: Optional[MuCache] = None, jobs: int = 1,
          accelerate: bool = True, limit: int = DESK_LIMIT) -> dict:
    """μ for every canonical permutation of length 1..max_len.

    Returns ``{n: [(perm, mu), ...]}`` in canonical (sorted) order.  Lengths
    are processed in increasing order so each length only needs the values
    of shorter ones; with ``jobs > 1`` a length's permutations are split
    across worker processes that each start from the shorter lengths.
    """
    if max_len < 1:
        raise ValueError("length must be at least 1")
    if max_len > limit:
        raise ValueError(f"length {max_len} exceeds the configured limit {limit}")
    if cache is None:
        cache = DEFAULT_CACHE
    out = {}
    for n in range(1, max_len + 1):
        reps = canonical_reps(n)
        if jobs > 1 and len(reps) >= 64:
            size = max(1, len(reps) // (jobs * 4))
            batches = [reps[i:i + size] for i in range(0, len(reps), size)]
            snapshot = [(k, v) for k, v in cache.items() if len(k) < n]
            with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(snapshot, accelerate)) as ex:
                rows = [row for part in ex.map(_worker_batch, batches) for row in part]
            for p, v in rows:
                cache.put(p, v)
        else:
            rows = [(p, mu_principal(p, cache, accelerate).mu) for p in reps]
        out[n] = sorted(rows)
        log.info("swept length %d: %d classes", n, len(rows))
    return out


def growth_bound(n: int) -> float:
    """The exponential lower bound 2^(⌊n/4⌋ − 1) on max |μ| at length n."""
    return 2.0 ** (n // 4 - 1)


def max_abs(rows) -> tuple[int, list]:
    best = max(abs(v) for _, v in rows)
    return best, sorted(p for p, v in rows if abs(v) == best)


def mu_max_sweep(n: int, cache: Optional[MuCache] = None, jobs: int = 1,
                 limit: int = DESK_LIMIT) -> tuple[int, list]:
    """Largest |μ(1, π)| over all π of length ``n`` and the canonical witnesses."""
    if n < 1 or n > limit:
        raise ValueError(f"length {n} outside 1..{limit}")
    rows = sweep(n, cache, jobs=jobs, limit=limit)[n]
    return max_abs(rows)
