"""Permutations in one-line notation and the structural predicates used
throughout the package.

Permutations are tuples of the integers ``1..n``.  :class:`Permutation` is a
thin ``tuple`` subclass, so it hashes and compares equal to the plain tuple
with the same entries; the hot loops elsewhere use plain tuples and only wrap
at the API boundary.
"""

from __future__ import annotations

from itertools import combinations, permutations as _itertools_permutations
from typing import Iterable, Iterator, Sequence


class PermutationError(ValueError):
    """Raised for text or sequences that do not describe a permutation."""


class Permutation(tuple):
    """An immutable permutation of ``1..n`` in one-line notation."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        values = tuple(int(v) for v in values)
        if not values:
            raise PermutationError("a permutation needs at least one entry")
        if sorted(values) != list(range(1, len(values) + 1)):
            raise PermutationError(f"{values!r} is not a bijection on 1..{len(values)}")
        return super().__new__(cls, values)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return parse(text)

    def __str__(self) -> str:
        return format_perm(self)

    def __repr__(self) -> str:
        return f"Permutation({format_perm(self)!r})"


def parse(text: str) -> Permutation:
    """Parse a digit string (``"2413"``) or comma-separated integers (``"2,4,1,3"``)."""
    s = text.strip()
    if not s:
        raise PermutationError("empty permutation text")
    try:
        if "," in s:
            values = [int(part) for part in s.split(",")]
        elif s.isdigit():
            values = [int(ch) for ch in s]
        else:
            raise ValueError(s)
    except ValueError:
        raise PermutationError(f"malformed permutation text {text!r}") from None
    return Permutation(values)


def format_perm(p: Sequence[int]) -> str:
    if len(p) <= 9:
        return "".join(str(v) for v in p)
    return ",".join(str(v) for v in p)


def as_perm(p) -> tuple:
    """Coerce text or a sequence to a plain tuple, validating it."""
    if isinstance(p, str):
        return tuple(parse(p))
    if isinstance(p, Permutation):
        return tuple(p)
    return tuple(Permutation(p))


def all_perms(n: int) -> Iterator[tuple]:
    """All permutations of length ``n`` in lexicographic order."""
    return _itertools_permutations(range(1, n + 1))


# ---------------------------------------------------------------------------
# flattening and containment


def flatten(values: Sequence[int]) -> tuple:
    """The permutation order-isomorphic to a sequence of distinct numbers."""
    rank = {v: r for r, v in enumerate(sorted(values), 1)}
    return tuple(rank[v] for v in values)


def pattern_of(pi: Sequence[int], positions: Iterable[int]) -> tuple:
    """Flatten the entries of ``pi`` at the given 1-based positions."""
    idx = sorted(set(positions))
    if not idx:
        raise PermutationError("empty position selection")
    if idx[0] < 1 or idx[-1] > len(pi):
        raise PermutationError(f"positions {idx} out of range for length {len(pi)}")
    return flatten([pi[i - 1] for i in idx])


def delete_point(p: tuple, i: int) -> tuple:
    """Remove the entry at 0-based position ``i`` and flatten."""
    v = p[i]
    return tuple(x - (x > v) for x in p[:i] + p[i + 1:])


def children(p: tuple) -> set:
    """All distinct one-point deletions of ``p``."""
    if len(p) <= 1:
        return set()
    return {delete_point(p, i) for i in range(len(p))}


def _embedding_plan(sigma: Sequence[int]):
    # For each prefix position r, the prefix positions holding the nearest
    # smaller and nearest larger value of sigma (or None).
    plan = []
    for r, v in enumerate(sigma):
        lo = hi = None
        for s in range(r):
            w = sigma[s]
            if w < v and (lo is None or w > sigma[lo]):
                lo = s
            elif w > v and (hi is None or w < sigma[hi]):
                hi = s
        plan.append((lo, hi))
    return plan


def contains(sigma: Sequence[int], pi: Sequence[int]) -> bool:
    """True iff ``pi`` has a subsequence order-isomorphic to ``sigma``."""
    m, n = len(sigma), len(pi)
    if m > n:
        return False
    if m == n:
        return tuple(sigma) == tuple(pi)
    if m <= 1:
        return True
    plan = _embedding_plan(sigma)
    chosen = [0] * m

    def search(r: int, start: int) -> bool:
        if r == m:
            return True
        lo, hi = plan[r]
        lo_v = chosen[lo] if lo is not None else 0
        hi_v = chosen[hi] if hi is not None else n + 1
        # leave room for the remaining m - r - 1 entries
        for i in range(start, n - (m - r - 1)):
            x = pi[i]
            if lo_v < x < hi_v:
                chosen[r] = x
                if search(r + 1, i + 1):
                    return True
        return False

    return search(0, 0)


# ---------------------------------------------------------------------------
# sums and symmetries


def direct_sum(alpha: Sequence[int], beta: Sequence[int]) -> tuple:
    a = len(alpha)
    return tuple(alpha) + tuple(b + a for b in beta)


def skew_sum(alpha: Sequence[int], beta: Sequence[int]) -> tuple:
    b = len(beta)
    return tuple(x + b for x in alpha) + tuple(beta)


def n_sums(r: int, alpha: Sequence[int]) -> tuple:
    if r < 1:
        raise ValueError("r must be positive")
    out = tuple(alpha)
    for _ in range(r - 1):
        out = direct_sum(out, alpha)
    return out


def reverse(p: Sequence[int]) -> tuple:
    return tuple(p[::-1])


def complement(p: Sequence[int]) -> tuple:
    n = len(p) + 1
    return tuple(n - x for x in p)


def inverse(p: Sequence[int]) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p, 1):
        inv[x - 1] = i
    return tuple(inv)


def rotate(p: Sequence[int]) -> tuple:
    """Rotate the plot of ``p`` a quarter turn clockwise."""
    return reverse(inverse(p))


def symmetries(pi: Sequence[int]) -> set:
    """Orbit of ``pi`` under reverse, complement and inverse (at most 8)."""
    p = tuple(pi)
    orbit = set()
    for q in (p, inverse(p)):
        r = reverse(q)
        orbit.update((q, r, complement(q), complement(r)))
    return orbit


def rotations(pi: Sequence[int]) -> list:
    """The four quarter-turn rotations of ``pi``, starting with ``pi`` itself.

    These are exactly the symmetries fixing 2413, so they commute with
    the 2413-balloon construction.
    """
    out = [tuple(pi)]
    for _ in range(3):
        out.append(rotate(out[-1]))
    return out


def canonical(pi: Sequence[int]) -> tuple:
    """Lexicographically least member of the symmetry orbit."""
    return min(symmetries(pi))


# ---------------------------------------------------------------------------
# intervals, corners and simplicity


def nontrivial_intervals(pi: Sequence[int]) -> list:
    """Every ``(start, end)`` (1-based, inclusive) position range whose values
    form a contiguous set, excluding singletons and the whole permutation."""
    n = len(pi)
    out = []
    for i in range(n):
        lo = hi = pi[i]
        for j in range(i + 1, n):
            x = pi[j]
            if x < lo:
                lo = x
            elif x > hi:
                hi = x
            if hi - lo == j - i and not (i == 0 and j == n - 1):
                out.append((i + 1, j + 1))
    return out


def is_simple(pi: Sequence[int]) -> bool:
    return not nontrivial_intervals(pi)


def downset_by_subsets(pi: Sequence[int]) -> set:
    """All patterns of ``pi`` by flattening every nonempty position subset."""
    n = len(pi)
    out = set()
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            out.add(flatten([pi[i] for i in idx]))
    return out


def simple_patterns(pi: Sequence[int]) -> set:
    return {s for s in downset_by_subsets(pi) if is_simple(s)}


def corners(pi: Sequence[int]) -> int:
    n = len(pi)
    if n == 1:
        return 1
    return int(pi[0] in (1, n)) + int(pi[-1] in (1, n))


def has_long_corner(pi: Sequence[int]) -> bool:
    n = len(pi)
    if n < 3:
        return False
    return (
        (pi[0] == 1 and pi[1] == 2)
        or (pi[0] == n and pi[1] == n - 1)
        or (pi[-1] == n and pi[-2] == n - 1)
        or (pi[-1] == 1 and pi[-2] == 2)
    )


def longest_monotone_interval(pi: Sequence[int]) -> int:
    """Length of the longest block of consecutive positions whose values are
    consecutive and monotone."""
    best = run_up = run_down = 1
    for a, b in zip(pi, pi[1:]):
        run_up = run_up + 1 if b == a + 1 else 1
        run_down = run_down + 1 if b == a - 1 else 1
        best = max(best, run_up, run_down)
    return best


def has_triple_adjacency(pi: Sequence[int]) -> bool:
    return longest_monotone_interval(pi) >= 3


def is_monotone(pi: Sequence[int]) -> bool:
    return longest_monotone_interval(pi) == len(pi)


ONE_PLUS = "1+t"
PLUS_ONE = "t+1"
ONE_MINUS = "1-t"
MINUS_ONE = "t-1"


def corner_decompositions(pi: Sequence[int]) -> list:
    """Every way to write ``pi`` as 1⊕τ, τ⊕1, 1⊖τ or τ⊖1, with its τ.

    Tags are ``"1+t"``, ``"t+1"``, ``"1-t"`` and ``"t-1"`` respectively.
    """
    p = tuple(pi)
    n = len(p)
    if n < 2:
        return []
    out = []
    if p[0] == 1:
        out.append((ONE_PLUS, tuple(x - 1 for x in p[1:])))
    if p[-1] == n:
        out.append((PLUS_ONE, p[:-1]))
    if p[0] == n:
        out.append((ONE_MINUS, p[1:]))
    if p[-1] == 1:
        out.append((MINUS_ONE, tuple(x - 1 for x in p[:-1])))
    return out
