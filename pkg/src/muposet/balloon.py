"""2413-balloons, generalized (i,j)-balloons, reductions and cores."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .perm import (
    Permutation,
    contains,
    corners,
    direct_sum,
    downset_by_subsets,
    flatten,
    format_perm,
    is_monotone,
    rotate,
    skew_sum,
)

ONE = (1,)
P2413 = (2, 4, 1, 3)

# labels of the four extremal ("red") points of a 2413-balloon, in mask order
RED_LABELS = (2, 4, 1, 3)
FULL_MASK = "1111"


def balloon_2413(beta: Sequence[int]) -> tuple:
    """Insert ``beta`` into the centre of 2413."""
    b = len(beta)
    if b < 1:
        raise ValueError("cannot balloon the empty permutation")
    return (2, b + 4) + tuple(x + 2 for x in beta) + (1, b + 3)


def unballoon_2413(pi: Sequence[int]) -> Optional[tuple]:
    """The β with ``balloon_2413(β) == pi``, or None."""
    n = len(pi)
    if n < 5 or pi[0] != 2 or pi[1] != n or pi[-2] != 1 or pi[-1] != n - 1:
        return None
    return tuple(x - 2 for x in pi[2:-2])


def is_2413_balloon(pi: Sequence[int]) -> bool:
    return unballoon_2413(pi) is not None


def is_double_balloon(pi: Sequence[int]) -> bool:
    beta = unballoon_2413(pi)
    return beta is not None and is_2413_balloon(beta)


@dataclass(frozen=True)
class GeneralBalloonSpec:
    """Balloon ``beta`` into ``alpha`` after column ``i`` and row ``j``."""

    alpha: tuple
    i: int
    j: int

    def __post_init__(self):
        a = len(self.alpha)
        object.__setattr__(self, "alpha", tuple(Permutation(self.alpha)))
        if not (0 <= self.i <= a and 0 <= self.j <= a):
            raise ValueError(f"indexes ({self.i},{self.j}) outside 0..{a}")


def balloon_general(spec: GeneralBalloonSpec, beta: Sequence[int]) -> tuple:
    """The (i,j)-balloon of ``beta`` by ``spec.alpha``, entry by entry.

    Note that the (0,0)-balloon comes out as β ⊕ α (and the (|α|,|α|)-balloon
    as α ⊕ β).
    """
    alpha, i, j = spec.alpha, spec.i, spec.j
    b = len(beta)
    if b < 1:
        raise ValueError("cannot balloon the empty permutation")
    out = []
    for x in range(1, len(alpha) + b + 1):
        if x <= i:
            a = alpha[x - 1]
            out.append(a if a <= j else a + b)
        elif x <= i + b:
            out.append(beta[x - i - 1] + j)
        else:
            a = alpha[x - b - 1]
            out.append(a if a <= j else a + b)
    return tuple(out)


def unballoon_general(spec: GeneralBalloonSpec, pi: Sequence[int]) -> Optional[tuple]:
    b = len(pi) - len(spec.alpha)
    if b < 1:
        return None
    beta = flatten(pi[spec.i:spec.i + b])
    return beta if balloon_general(spec, beta) == tuple(pi) else None


def pi_sequence(n: int) -> tuple:
    """1, 12, 132, 2413 for n ≤ 4, then the 2413-balloon of π^(n−4)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    base = {1: (1,), 2: (1, 2), 3: (1, 3, 2), 4: P2413}
    depth, r = 0, n
    while r > 4:
        r -= 4
        depth += 1
    p = base[r]
    for _ in range(depth):
        p = balloon_2413(p)
    return p


# ---------------------------------------------------------------------------
# reductions


@dataclass(frozen=True)
class ReductionRecord:
    sigma: tuple
    red_mask: str  # kept flags for the red points 2,4,1,3
    proper: bool
    unique: bool = True

    def overline(self) -> str:
        """Balloon label with removed red points marked by a leading '~'."""
        return "".join(("" if k == "1" else "~") + str(lab) for k, lab in zip(self.red_mask, RED_LABELS))

    def __str__(self) -> str:
        return f"{self.red_mask} {format_perm(self.sigma)} {'proper' if self.proper else 'improper'}"


ALL_MASKS = tuple(
    f"{m:04b}" for m in sorted(range(15), key=lambda m: (-bin(m).count("1"), m))
)


def reduce_by_mask(beta: Sequence[int], mask: str) -> tuple:
    """Flatten β together with the kept red points of ⟨2413, β⟩."""
    pi = balloon_2413(beta)
    n = len(pi)
    red_pos = (0, 1, n - 2, n - 1)
    drop = {pos for pos, keep in zip(red_pos, mask) if keep == "0"}
    return flatten([v for idx, v in enumerate(pi) if idx not in drop])


def _label_rotation() -> dict:
    # where each red label of ⟨2413, β⟩ lands after rotate(); found from
    # coordinates so it cannot drift from rotate()'s definition
    pi = balloon_2413((1,))
    n = len(pi)
    spots = {lab: (x, pi[x - 1]) for lab, x in zip(RED_LABELS, (1, 2, n - 1, n))}
    rotated = rotate(pi)
    assert rotated == balloon_2413(rotate((1,)))
    out = {}
    for lab, (x, y) in spots.items():
        # rotate() = reverse ∘ inverse moves the point (x, y) to (n+1-y, x)
        nx, ny = n + 1 - y, x
        assert rotated[nx - 1] == ny
        out[lab] = next(l2 for l2, (x2, y2) in spots.items() if (x2, y2) == (nx, ny))
    return out


_LABEL_ROT = _label_rotation()


def rotate_mask(mask: str, times: int = 1) -> str:
    """Translate a red mask of ⟨2413, β⟩ to ⟨2413, rotate(β)⟩."""
    for _ in range(times % 4):
        kept = {lab for lab, k in zip(RED_LABELS, mask) if k == "1"}
        kept = {_LABEL_ROT[lab] for lab in kept}
        mask = "".join("1" if lab in kept else "0" for lab in RED_LABELS)
    return mask


def _mask(text: str) -> str:
    # "~2413" style -> kept bits
    bits, drop = [], False
    for ch in text:
        if ch == "~":
            drop = True
            continue
        bits.append("0" if drop else "1")
        drop = False
    return "".join(bits)


# improper masks with β in the oriented form (1⊕γ, 1⊕γ⊕1)
_IMPROPER = {
    "balloon": {"0000"},
    "none": set(),
    "one": {_mask(s) for s in ("~2~413", "~2~41~3", "~2~4~13")} | {"0000"},
    "two": {_mask(s) for s in ("~2~413", "24~1~3", "2~4~1~3", "~24~1~3", "~2~41~3", "~2~4~13")} | {"0000"},
}

# coefficient of μ(β) for each proper reduction, oriented as above
_SIGNS_ALL = {m: (-1) ** m.count("0") for m in ALL_MASKS}
_MU_TABLE = {
    "balloon": {m: s for m, s in _SIGNS_ALL.items() if m != "0000"},
    "none": dict(_SIGNS_ALL),
    "one": {
        _mask("~2413"): -1, _mask("2~413"): 0, _mask("24~13"): -1, _mask("241~3"): -1,
        _mask("~24~13"): 1, _mask("~241~3"): 1, _mask("2~4~13"): 0, _mask("2~41~3"): 0,
        _mask("24~1~3"): 1,
        _mask("2~4~1~3"): 0, _mask("~24~1~3"): -1,
    },
    "two": {
        _mask("~2413"): -1, _mask("2~413"): 0, _mask("24~13"): 0, _mask("241~3"): -1,
        _mask("~24~13"): 0, _mask("~241~3"): 1, _mask("2~4~13"): 0, _mask("2~41~3"): 0,
    },
}


def beta_class(beta: Sequence[int]) -> str:
    """One of 'balloon', 'monotone', 'none', 'one', 'two'."""
    if is_2413_balloon(beta):
        return "balloon"
    if is_monotone(beta):
        return "monotone"
    return {0: "none", 1: "one", 2: "two"}[corners(beta)]


def _orientation(beta: tuple, cls: str) -> int:
    """Quarter turns taking β to 1⊕γ (one corner) or 1⊕γ⊕1 (two corners)."""
    if cls not in ("one", "two"):
        return 0
    q = beta
    for k in range(4):
        if q[0] == 1 and (cls == "one" or q[-1] == len(q)):
            return k
        q = rotate(q)
    raise AssertionError(f"no orientation for {beta}")


def is_proper_by_definition(sigma: Sequence[int], beta: Sequence[int]) -> bool:
    """No shorter η has η ≤ σ < ⟨2413, η⟩.  Brute force over patterns of σ."""
    s = tuple(sigma)
    for eta in downset_by_subsets(s):
        if len(eta) < len(beta):
            big = balloon_2413(eta)
            if len(s) < len(big) and contains(s, big):
                return False
    return True


def reductions(beta: Sequence[int]) -> list[ReductionRecord]:
    """All 15 reductions of ⟨2413, β⟩ (three red points first, β last).

    For monotone β several masks flatten to the same permutation; only the
    first is kept, flagged ``unique=False``, and properness is decided by the
    definition rather than the case list.
    """
    beta = tuple(beta)
    cls = beta_class(beta)
    out = []
    if cls == "monotone":
        seen = set()
        for m in ALL_MASKS:
            s = reduce_by_mask(beta, m)
            if s in seen:
                continue
            seen.add(s)
            out.append(ReductionRecord(s, m, is_proper_by_definition(s, beta), unique=False))
        return out
    k = _orientation(beta, cls)
    improper = _IMPROPER[cls]
    for m in ALL_MASKS:
        out.append(ReductionRecord(reduce_by_mask(beta, m), m, rotate_mask(m, k) not in improper))
    return out


def proper_reductions(beta: Sequence[int]) -> set:
    return {r.sigma for r in reductions(beta) if r.proper}


def reduction_mu_table(beta: Sequence[int]) -> list[tuple]:
    """``(sigma, coefficient, mask)`` for every proper reduction, where
    μ(σ) = coefficient · μ(β)."""
    beta = tuple(beta)
    cls = beta_class(beta)
    if cls == "monotone":
        raise ValueError(f"{format_perm(beta)} is monotone; the reduction tables do not apply")
    k = _orientation(beta, cls)
    table = _MU_TABLE[cls]
    return [(r.sigma, table[rotate_mask(r.red_mask, k)], r.red_mask) for r in reductions(beta) if r.proper]


def predicted_mu_balloon(beta: Sequence[int], mu_of: Optional[Callable] = None) -> int:
    """μ(⟨2413, β⟩) from the closed form in terms of μ(β)."""
    beta = tuple(beta)
    if beta == ONE:
        return 4
    if beta == P2413:
        return -6
    if mu_of is None:
        from .mobius import mu_principal

        def mu_of(p):
            return mu_principal(p).mu
    m = mu_of(beta)
    return 2 * m if is_2413_balloon(beta) else m


# ---------------------------------------------------------------------------
# core


def _forms():
    d, s = direct_sum, skew_sum
    # (leading single points, trailing single points, constructor from η)
    tier1 = [
        (1, 2, lambda e: s(ONE, d(s(e, ONE), ONE))),
        (1, 2, lambda e: d(s(d(ONE, e), ONE), ONE)),
        (2, 1, lambda e: d(ONE, s(ONE, d(e, ONE)))),
        (2, 1, lambda e: s(d(ONE, s(ONE, e)), ONE)),
    ]
    tier2 = [
        (0, 2, lambda e: d(s(e, ONE), ONE)),
        (1, 1, lambda e: s(ONE, d(e, ONE))),
        (1, 1, lambda e: s(s(ONE, e), ONE)),
        (1, 1, lambda e: d(d(ONE, e), ONE)),
        (1, 1, lambda e: s(d(ONE, e), ONE)),
        (2, 0, lambda e: d(ONE, s(ONE, e))),
    ]
    tier3 = [
        (1, 0, lambda e: d(ONE, e)),
        (1, 0, lambda e: s(ONE, e)),
        (0, 1, lambda e: s(e, ONE)),
        (0, 1, lambda e: d(e, ONE)),
    ]
    return (tier1, tier2, tier3)


_TIERS = _forms()


@lru_cache(maxsize=None)
def core(psi: tuple) -> tuple:
    """The core η of a pivot ψ: strip the first matching form, tier by tier."""
    psi = tuple(psi)
    n = len(psi)
    for tier in _TIERS:
        for lead, trail, build in tier:
            if n - lead - trail < 1:
                continue
            eta = flatten(psi[lead:n - trail])
            if build(eta) == psi:
                return eta
    return psi
