"""Chains in [1, π]: enumeration, sampling, Hall sums, and the R/G/B
partition with its two parity-reversing involutions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .balloon import P2413, balloon_2413, core, proper_reductions, unballoon_2413
from .mobius import _Interval, downset
from .perm import children, contains, format_perm, parse

DEFAULT_CHAIN_LIMIT = 10**7


class ChainLimitExceeded(RuntimeError):
    """The interval has more chains than the enumeration limit allows."""


class InvolutionError(RuntimeError):
    """An involution was applied to a chain it is not defined on."""


@dataclass(frozen=True)
class Chain:
    """Permutations from 1 up to the top, each strictly contained in the next."""

    elements: tuple

    def __len__(self) -> int:
        # number of steps, not number of elements
        return len(self.elements) - 1

    @property
    def top(self) -> tuple:
        return self.elements[-1]

    def is_valid(self, top=None) -> bool:
        els = self.elements
        if not els or els[0] != (1,):
            return False
        if top is not None and els[-1] != tuple(top):
            return False
        return all(len(a) < len(b) and contains(a, b) for a, b in zip(els, els[1:]))

    def __str__(self) -> str:
        return ";".join(format_perm(p) for p in self.elements)

    @classmethod
    def parse(cls, text: str) -> "Chain":
        return cls(tuple(tuple(parse(t)) for t in text.strip().split(";")))


def _index_lists(iv: _Interval) -> list[list[int]]:
    out = []
    for b in iv.below:
        idx, i = [], 0
        while b:
            if b & 1:
                idx.append(i)
            b >>= 1
            i += 1
        out.append(idx)
    return out


def count_chains(pi) -> int:
    """Number of chains in [1, π] containing both ends (a DP, no enumeration)."""
    iv = _Interval(tuple(pi))
    below = _index_lists(iv)
    f = [0] * len(iv)
    f[0] = 1
    for j in range(1, len(iv)):
        f[j] = sum(f[i] for i in below[j])
    return f[-1]


def enumerate_chains(pi, limit: int = DEFAULT_CHAIN_LIMIT) -> Iterator[Chain]:
    """Every chain of [1, π] containing 1 and π, each exactly once."""
    p = tuple(pi)
    if p == (1,):
        yield Chain(((1,),))
        return
    total = count_chains(p)
    if total > limit:
        raise ChainLimitExceeded(f"[1, {format_perm(p)}] has {total} chains (limit {limit})")
    iv = _Interval(p)
    below = _index_lists(iv)
    order = iv.order
    top = len(order) - 1
    path = [top]

    def walk(j):
        for i in below[j]:
            if i == 0:
                yield Chain(tuple(order[k] for k in ([0] + path[::-1])))
            else:
                path.append(i)
                yield from walk(i)
                path.pop()

    yield from walk(top)


def sample_chains(pi, k: int, seed=None) -> list[Chain]:
    """``k`` random valid chains: random subsets of random maximal chains.

    Not uniform; reproducible for a given seed."""
    p = tuple(pi)
    rng = random.Random(seed)
    out = []
    for _ in range(k):
        maximal = [p]
        while len(maximal[-1]) > 1:
            maximal.append(rng.choice(sorted(children(maximal[-1]))))
        inner = [q for q in maximal[1:-1] if rng.random() < 0.5]
        els = ((1,),) + tuple(reversed(inner)) + ((p,) if p != (1,) else ())
        out.append(Chain(els))
    return out


def hall_sum(chains: Iterable[Chain]) -> int:
    return sum(-1 if len(c) % 2 else 1 for c in chains)


def mu_via_chains(pi, limit: int = DEFAULT_CHAIN_LIMIT) -> int:
    """μ(1, π) as the Hall sum over all chains of [1, π]."""
    return hall_sum(enumerate_chains(pi, limit))


def second_element_sums(pi, limit: int = DEFAULT_CHAIN_LIMIT) -> dict:
    """Hall sums of chains grouped by their second-highest element."""
    sums: dict = {}
    for c in enumerate_chains(pi, limit):
        if len(c) == 0:
            continue
        kappa = c.elements[-2]
        sums[kappa] = sums.get(kappa, 0) + (-1 if len(c) % 2 else 1)
    return sums


def mu_second_element_sum(pi, psi, limit: int = DEFAULT_CHAIN_LIMIT) -> int:
    """Hall sum of the chains of [1, π] whose second-highest element is ψ."""
    p, s = tuple(pi), tuple(psi)
    if not (1 < len(s) < len(p) and contains(s, p)):
        raise ValueError(f"need 1 < ψ < π, got ψ={format_perm(s)} π={format_perm(p)}")
    return second_element_sums(p, limit).get(s, 0)


# ---------------------------------------------------------------------------
# anatomy and involutions


@dataclass(frozen=True)
class ChainAnatomy:
    phi: tuple    # least 2413-balloon of the top segment
    psi: tuple    # pivot, immediately below phi
    tau: tuple    # balloon_2413(tau) == phi
    kappa: tuple  # second-highest element
    eta: tuple    # core of psi
    pivot_index: int


def anatomy(c: Chain) -> ChainAnatomy:
    els = c.elements
    if unballoon_2413(els[-1]) is None:
        raise ValueError(f"top {format_perm(els[-1])} is not a 2413-balloon")
    i = len(els) - 1
    while i > 0 and unballoon_2413(els[i - 1]) is not None:
        i -= 1
    if i == 0:
        # only possible if 1 were a balloon
        raise ValueError("chain has no element below its least balloon")
    phi, psi = els[i], els[i - 1]
    return ChainAnatomy(phi, psi, unballoon_2413(phi), els[-2], core(psi), i - 1)


class BalloonChainLab:
    """The R/G/B partition of the chains of [1, ⟨2413, β⟩]."""

    def __init__(self, pi):
        self.pi = tuple(pi)
        self.beta = unballoon_2413(self.pi)
        if self.beta is None:
            raise ValueError(f"{format_perm(self.pi)} is not a 2413-balloon")
        self.proper = frozenset(proper_reductions(self.beta))
        self.below_2413 = frozenset(downset(P2413))

    def classify(self, c: Chain, a: Optional[ChainAnatomy] = None) -> str:
        a = a or anatomy(c)
        if a.kappa in self.proper:
            return "R"
        if a.psi in self.below_2413:
            return "G"
        return "B"

    def phi_g(self, c: Chain) -> Chain:
        a = anatomy(c)
        els = c.elements
        k = a.pivot_index
        if a.psi == P2413:
            return Chain(els[:k] + els[k + 1:])
        if a.psi in self.below_2413:
            return Chain(els[:k + 1] + (P2413,) + els[k + 1:])
        raise InvolutionError(f"pivot of {c} is not below 2413")

    def phi_b(self, c: Chain) -> Chain:
        a = anatomy(c)
        els = c.elements
        k = a.pivot_index
        if a.eta == a.tau:
            if k + 1 == len(els) - 1:
                raise InvolutionError(f"phi_b would remove the top of {c}")
            return Chain(els[:k + 1] + els[k + 2:])
        if len(a.eta) < len(a.tau):
            return Chain(els[:k + 1] + (balloon_2413(a.eta),) + els[k + 1:])
        raise InvolutionError(f"core of pivot exceeds tau in {c}")

    def check_involution(self, c: Chain, which: str) -> Optional[str]:
        """None if the involution behaves on ``c``, else a reason."""
        phi = self.phi_g if which == "G" else self.phi_b
        try:
            d = phi(c)
        except InvolutionError as exc:
            return str(exc)
        if not d.is_valid(self.pi):
            return f"image {d} is not a chain"
        if abs(len(d) - len(c)) != 1:
            return f"image {d} does not change length by one"
        if self.classify(d) != which:
            return f"image {d} lands in {self.classify(d)}"
        try:
            back = phi(d)
        except InvolutionError as exc:
            return f"image {d}: {exc}"
        if back != c:
            return f"applying twice gives {back}"
        return None

    def hall_sums(self, chains: Iterable[Chain]) -> dict:
        sums = {"R": 0, "G": 0, "B": 0}
        for c in chains:
            sums[self.classify(c)] += -1 if len(c) % 2 else 1
        return sums


def partition_rgb(pi, chains: Iterable[Chain]) -> dict:
    """Group chains of [1, π] (π a 2413-balloon) into 'R', 'G' and 'B'."""
    lab = BalloonChainLab(pi)
    out = {"R": [], "G": [], "B": []}
    for c in chains:
        out[lab.classify(c)].append(c)
    return out

