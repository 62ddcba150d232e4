"""Parameters and composition combinatorics.

A composition is a tuple of nonnegative ints of length r. Its diagram has
a node (i, j) for each row i (1-based) and column 1 <= j <= eta_i. All the
per-node statistics (arm, coarm, leg, coleg) and the hook-type products
d, d', e built from them live here, together with the partial order on
compositions that makes the Cherednik operators triangular.

The order comes in two orientations. "standard" compares partitions by
classical dominance (prefix sums <=) and, inside a rearrangement class,
compares prefix sums of the compositions themselves; the non-increasing
arrangement is the largest element of its class. "reversed" flips every
inequality. Only the standard orientation is consistent with the
triangular structure of the operators; see jack.calibrate_orientation,
which verifies this against the closed-form evaluation e_eta/d_eta and is
exercised by the test suite. The default is frozen accordingly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterator, NamedTuple, Sequence

from .errors import InputError
from .ratio import rat

Composition = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


class Orientation(enum.Enum):
    STANDARD = "standard"
    REVERSED = "reversed"


# Frozen by the calibration sweep; see calibrate_orientation in jack.py
# and the decisions recorded in the README.
DEFAULT_ORIENTATION = Orientation.STANDARD


@dataclass(frozen=True)
class AlphaContext:
    """Number of variables r and the positive rational parameter alpha.

    Derived quantities: a = 2/alpha (off-diagonal weight exponent),
    q = 1 + (r-1)/alpha, and the shift vector rho with
    rho_j = (2j - r - 1)/alpha.
    """

    r: int
    alpha: Fraction

    def __post_init__(self):
        if not isinstance(self.r, int) or self.r < 1:
            raise InputError(f"r must be a positive integer, got {self.r!r}")
        object.__setattr__(self, "alpha", rat(self.alpha))
        if self.alpha <= 0:
            raise InputError(f"alpha must be positive, got {self.alpha}")

    @property
    def a(self) -> Fraction:
        return 2 / self.alpha

    @property
    def q(self) -> Fraction:
        return 1 + Fraction(self.r - 1) / self.alpha

    @property
    def rho(self) -> RationalVector:
        return tuple(Fraction(2 * j - self.r - 1) / self.alpha for j in range(1, self.r + 1))

    def check_composition(self, eta: Sequence[int]) -> Composition:
        eta = tuple(eta)
        if len(eta) != self.r:
            raise InputError(f"composition {eta} has length {len(eta)}, expected r={self.r}")
        for part in eta:
            if not isinstance(part, int) or part < 0:
                raise InputError(f"composition entries must be nonnegative ints, got {eta}")
        return eta


def weight(eta: Sequence[int]) -> int:
    return sum(eta)


def reverse_star(v: Sequence) -> tuple:
    """Reverse the entries: eta* = (eta_r, ..., eta_1). Works for
    compositions and rational vectors alike."""
    return tuple(reversed(tuple(v)))


def partition_of(eta: Sequence[int]) -> Composition:
    """Non-increasing rearrangement."""
    return tuple(sorted(eta, reverse=True))


def compositions_of_weight(r: int, m: int) -> Iterator[Composition]:
    """All length-r compositions of m, in no particular order."""
    if r < 1:
        raise InputError("r must be >= 1")
    if m < 0:
        raise InputError("weight must be >= 0")
    if r == 1:
        yield (m,)
        return
    for head in range(m, -1, -1):
        for tail in compositions_of_weight(r - 1, m - head):
            yield (head,) + tail


def _prefix_le(zeta: Composition, eta: Composition) -> bool:
    acc = 0
    for z, e in zip(zeta, eta):
        acc += z - e
        if acc > 0:
            return False
    return True


def compare_compositions(
    zeta: Sequence[int],
    eta: Sequence[int],
    orientation: Orientation = DEFAULT_ORIENTATION,
) -> bool:
    """True iff zeta is strictly below eta in the composition order.

    Requires equal length and equal weight (distinct weights never compare;
    the operators preserve degree). Distinct rearrangement classes compare
    by dominance of the partitions; within a class, by prefix sums of the
    compositions themselves. Returns False for incomparable pairs.
    """
    zeta, eta = tuple(zeta), tuple(eta)
    if len(zeta) != len(eta):
        raise InputError(f"length mismatch: {zeta} vs {eta}")
    if weight(zeta) != weight(eta):
        raise InputError(f"weight mismatch: {zeta} vs {eta}")
    if zeta == eta:
        return False
    if orientation is Orientation.REVERSED:
        zeta, eta = eta, zeta
    zp, ep = partition_of(zeta), partition_of(eta)
    if zp != ep:
        return _prefix_le(zp, ep)
    return _prefix_le(zeta, eta)


def total_key(eta: Sequence[int]) -> tuple:
    """Sort key whose ascending order linearly extends the standard
    orientation (descending extends the reversed one). Lexicographic
    comparison refines dominance on partitions, and entrywise lex refines
    the prefix-sum rule within a class."""
    eta = tuple(eta)
    return (partition_of(eta), eta)


def sorted_slice(r: int, m: int, orientation: Orientation = DEFAULT_ORIENTATION) -> list[Composition]:
    """Compositions of weight m sorted ascending in (a linear extension
    of) the chosen orientation."""
    comps = sorted(compositions_of_weight(r, m), key=total_key)
    if orientation is Orientation.REVERSED:
        comps.reverse()
    return comps


class NodeStats(NamedTuple):
    arm: int
    coarm: int
    leg: int
    coleg: int


def node_stats(eta: Sequence[int], i: int, j: int) -> NodeStats:
    """Arm, coarm, leg, coleg of node (i, j) of the composition diagram.

    1-based: row i with 1 <= i <= r, column j with 1 <= j <= eta_i.
    arm = eta_i - j, coarm = j - 1,
    leg  = #{k > i : j <= eta_k <= eta_i} + #{k < i : j <= eta_k + 1 <= eta_i},
    coleg = #{k > i : eta_k > eta_i}      + #{k < i : eta_k >= eta_i}.
    """
    eta = tuple(eta)
    r = len(eta)
    if not (1 <= i <= r):
        raise InputError(f"row {i} outside 1..{r}")
    if not (1 <= j <= eta[i - 1]):
        raise InputError(f"column {j} outside 1..eta_{i}={eta[i - 1]} for eta={eta}")
    ei = eta[i - 1]
    leg = 0
    coleg = 0
    for k in range(1, r + 1):
        if k == i:
            continue
        ek = eta[k - 1]
        if k > i:
            if j <= ek <= ei:
                leg += 1
            if ek > ei:
                coleg += 1
        else:
            if j <= ek + 1 <= ei:
                leg += 1
            if ek >= ei:
                coleg += 1
    return NodeStats(arm=ei - j, coarm=j - 1, leg=leg, coleg=coleg)


class HookProducts(NamedTuple):
    d: Fraction
    d_prime: Fraction
    e: Fraction


def hook_products(eta: Sequence[int], ctx: AlphaContext) -> HookProducts:
    """Products over the diagram of eta of
    d'(s) = alpha*(arm+1) + leg, d(s) = d'(s) + 1,
    e(s)  = alpha*(coarm+1) + r - coleg.
    Empty diagram gives (1, 1, 1)."""
    eta = ctx.check_composition(eta)
    alpha = ctx.alpha
    d = Fraction(1)
    dp = Fraction(1)
    e = Fraction(1)
    for i in range(1, ctx.r + 1):
        for j in range(1, eta[i - 1] + 1):
            st = node_stats(eta, i, j)
            dps = alpha * (st.arm + 1) + st.leg
            d *= dps + 1
            dp *= dps
            e *= alpha * (st.coarm + 1) + ctx.r - st.coleg
    return HookProducts(d=d, d_prime=dp, e=e)


def evaluation_at_ones(eta: Sequence[int], ctx: AlphaContext) -> Fraction:
    """Closed form e_eta / d_eta for the value of the monic eigenpolynomial
    at (1, ..., 1)."""
    h = hook_products(eta, ctx)
    return h.e / h.d


def pochhammer_alpha(nu: Sequence, kappa: Sequence[int], ctx: AlphaContext) -> Fraction:
    """Generalized Pochhammer symbol: the finite product
    prod_j prod_{i=0}^{kappa_j - 1} (nu_j - (j-1)/alpha + i).
    nu may be any rational vector of length r; kappa is a composition."""
    kappa = ctx.check_composition(kappa)
    nu = tuple(rat(x) for x in nu)
    if len(nu) != ctx.r:
        raise InputError(f"nu has length {len(nu)}, expected r={ctx.r}")
    out = Fraction(1)
    for j in range(1, ctx.r + 1):
        base = nu[j - 1] - Fraction(j - 1) / ctx.alpha
        for i in range(kappa[j - 1]):
            out *= base + i
    return out


def partitions_of_weight(r: int, m: int) -> list[Composition]:
    """Partitions of m with at most r parts, padded to length r, sorted
    ascending by the same key that refines dominance."""
    out = set()
    for comb in combinations_with_replacement(range(m + 1), r):
        if sum(comb) == m:
            out.add(tuple(sorted(comb, reverse=True)))
    return sorted(out, key=total_key)
