"""Sparse multivariate polynomials and total-degree-truncated series
over exact rationals.

Terms are dicts mapping exponent tuples to nonzero Fractions; zero
coefficients are dropped on construction and after every operation, so
equality is plain dict equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InputError
from .ratio import rat

MultiExponent = tuple[int, ...]


def _clean(terms: Mapping[MultiExponent, Fraction]) -> dict[MultiExponent, Fraction]:
    return {e: c for e, c in terms.items() if c != 0}


class SparsePolynomial:
    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping[MultiExponent, Fraction] | None = None):
        if rank < 1:
            raise InputError("rank must be >= 1")
        self.rank = rank
        self.terms = _clean(terms) if terms else {}

    @classmethod
    def zero(cls, rank: int) -> "SparsePolynomial":
        return cls(rank)

    @classmethod
    def constant(cls, rank: int, c) -> "SparsePolynomial":
        c = rat(c)
        return cls(rank, {(0,) * rank: c} if c else {})

    @classmethod
    def monomial(cls, rank: int, exp: Sequence[int], coef=1) -> "SparsePolynomial":
        exp = tuple(exp)
        if len(exp) != rank or any(e < 0 for e in exp):
            raise InputError(f"bad exponent {exp} for rank {rank}")
        return cls(rank, {exp: rat(coef)})

    @classmethod
    def variable(cls, rank: int, j: int) -> "SparsePolynomial":
        """x_j, 1-based."""
        exp = [0] * rank
        exp[j - 1] = 1
        return cls.monomial(rank, exp)

    def is_zero(self) -> bool:
        return not self.terms

    def copy(self) -> "SparsePolynomial":
        return SparsePolynomial(self.rank, dict(self.terms))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparsePolynomial)
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __hash__(self):
        raise TypeError("SparsePolynomial is mutable-ish; not hashable")

    def _check_rank(self, other: "SparsePolynomial"):
        if self.rank != other.rank:
            raise InputError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        self._check_rank(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SparsePolynomial(self.rank, out)

    def __neg__(self) -> "SparsePolynomial":
        return SparsePolynomial(self.rank, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "SparsePolynomial") -> "SparsePolynomial":
        return self + (-other)

    def scale(self, c) -> "SparsePolynomial":
        c = rat(c)
        if c == 0:
            return SparsePolynomial(self.rank)
        return SparsePolynomial(self.rank, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SparsePolynomial):
            self._check_rank(other)
            out: dict[MultiExponent, Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    s = out.get(e, 0) + c1 * c2
                    if s:
                        out[e] = s
                    else:
                        out.pop(e, None)
            return SparsePolynomial(self.rank, out)
        return self.scale(other)

    __rmul__ = __mul__

    def total_degree(self) -> int:
        """Degree of the zero polynomial is -1 by convention here."""
        return max((sum(e) for e in self.terms), default=-1)

    def homogeneous_slice(self, m: int) -> "SparsePolynomial":
        return SparsePolynomial(self.rank, {e: c for e, c in self.terms.items() if sum(e) == m})

    def homogeneous_slices(self) -> dict[int, "SparsePolynomial"]:
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {m: SparsePolynomial(self.rank, t) for m, t in sorted(out.items())}

    def evaluate(self, point: Sequence) -> Fraction:
        point = [rat(p) for p in point]
        if len(point) != self.rank:
            raise InputError("evaluation point has wrong length")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return total

    def evaluate_ones(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def partial(self, j: int) -> "SparsePolynomial":
        """d/dx_j, 1-based."""
        out: dict[MultiExponent, Fraction] = {}
        for e, c in self.terms.items():
            k = e[j - 1]
            if k:
                e2 = e[: j - 1] + (k - 1,) + e[j:]
                out[e2] = out.get(e2, 0) + c * k
        return SparsePolynomial(self.rank, out)

    def mul_var(self, j: int, power: int = 1) -> "SparsePolynomial":
        """Multiply by x_j^power, 1-based."""
        return SparsePolynomial(
            self.rank,
            {e[: j - 1] + (e[j - 1] + power,) + e[j:]: c for e, c in self.terms.items()},
        )

    def permute_vars(self, w: Sequence[int]) -> "SparsePolynomial":
        """Substitute x_i -> x_{w(i)}; w is 1-based one-line notation."""
        w = tuple(w)
        if sorted(w) != list(range(1, self.rank + 1)):
            raise InputError(f"{w} is not a permutation of 1..{self.rank}")
        out: dict[MultiExponent, Fraction] = {}
        for e, c in self.terms.items():
            e2 = [0] * self.rank
            for i, k in enumerate(e):
                e2[w[i] - 1] += k
            key = tuple(e2)
            out[key] = out.get(key, 0) + c
        return SparsePolynomial(self.rank, out)

    def swap_vars(self, i: int, j: int) -> "SparsePolynomial":
        w = list(range(1, self.rank + 1))
        w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
        return self.permute_vars(w)

    def shift_vars(self, offset) -> "SparsePolynomial":
        """Substitute x_j -> x_j + offset for every variable, expanded
        exactly with binomial coefficients."""
        offset = rat(offset)
        if offset == 0:
            return self.copy()
        out = SparsePolynomial(self.rank)
        for e, c in self.terms.items():
            factors = []
            for k in e:
                factors.append({p: rat(comb(k, p)) * offset ** (k - p) for p in range(k + 1)})
            acc = {(): c}
            for f in factors:
                nxt: dict[tuple, Fraction] = {}
                for stem, cv in acc.items():
                    for p, fv in f.items():
                        key = stem + (p,)
                        nxt[key] = nxt.get(key, 0) + cv * fv
                acc = nxt
            out = out + SparsePolynomial(self.rank, acc)
        return out

    def scale_vars(self, c) -> "SparsePolynomial":
        """Substitute x_j -> c * x_j."""
        c = rat(c)
        return SparsePolynomial(self.rank, {e: v * c ** sum(e) for e, v in self.terms.items()})

    def tensor(self, other: "SparsePolynomial") -> "SparsePolynomial":
        """Product in disjoint variable blocks: rank r1 + r2."""
        out: dict[MultiExponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = c1 * c2
        return SparsePolynomial(self.rank + other.rank, out)

    def sorted_terms(self) -> list[tuple[MultiExponent, Fraction]]:
        """Graded lexicographic order: by total degree, then by exponent."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def __repr__(self):
        inner = ", ".join(f"{e}: {c}" for e, c in self.sorted_terms()[:8])
        more = "..." if len(self.terms) > 8 else ""
        return f"SparsePolynomial(rank={self.rank}, {{{inner}{more}}})"


class TruncatedSeries:
    """Formal power series kept modulo total degree > cap."""

    __slots__ = ("rank", "cap", "terms")

    def __init__(self, rank: int, cap: int, terms: Mapping[MultiExponent, Fraction] | None = None):
        if cap < 0:
            raise InputError("cap must be >= 0")
        self.rank = rank
        self.cap = cap
        self.terms = {}
        if terms:
            self.terms = {e: c for e, c in terms.items() if c != 0 and sum(e) <= cap}

    @classmethod
    def one(cls, rank: int, cap: int) -> "TruncatedSeries":
        return cls(rank, cap, {(0,) * rank: Fraction(1)})

    @classmethod
    def from_polynomial(cls, p: SparsePolynomial, cap: int) -> "TruncatedSeries":
        return cls(p.rank, cap, p.terms)

    def to_polynomial(self) -> SparsePolynomial:
        return SparsePolynomial(self.rank, self.terms)

    def _check(self, other: "TruncatedSeries"):
        if self.rank != other.rank or self.cap != other.cap:
            raise InputError("series rank/cap mismatch")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return TruncatedSeries(self.rank, self.cap, out)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "TruncatedSeries":
        c = rat(c)
        return TruncatedSeries(self.rank, self.cap, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out: dict[MultiExponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > self.cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return TruncatedSeries(self.rank, self.cap, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.rank == other.rank
            and self.cap == other.cap
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"TruncatedSeries(rank={self.rank}, cap={self.cap}, nterms={len(self.terms)})"


def one_minus_pow_coeffs(s: int, cap: int) -> list[Fraction]:
    """Coefficients of (1 - u)^s through degree cap, s any integer."""
    if s >= 0:
        return [rat((-1) ** k * comb(s, k)) if k <= s else rat(0) for k in range(cap + 1)]
    m = -s
    return [rat(comb(m - 1 + k, k)) for k in range(cap + 1)]


def one_plus_pow_coeffs(s: int, cap: int) -> list[Fraction]:
    """Coefficients of (1 + u)^s through degree cap, s any integer."""
    base = one_minus_pow_coeffs(s, cap)
    return [c if k % 2 == 0 else -c for k, c in enumerate(base)]


def convolve_truncated(a: list[Fraction], b: list[Fraction], cap: int) -> list[Fraction]:
    out = [Fraction(0)] * (cap + 1)
    for i, ai in enumerate(a[: cap + 1]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: cap + 1 - i]):
            if bj:
                out[i + j] += ai * bj
    return out


def _axis_series_product(
    rank: int, cap: int, coef, axis_coeffs: list[list[Fraction]]
) -> dict[MultiExponent, Fraction]:
    """Tensor product of one-variable series across the rank axes,
    truncated at total degree cap, all scaled by coef."""
    acc: dict[MultiExponent, Fraction] = {(): rat(coef)}
    for coeffs in axis_coeffs:
        nxt: dict[tuple, Fraction] = {}
        for stem, cv in acc.items():
            room = cap - sum(stem)
            for k in range(min(room, len(coeffs) - 1) + 1):
                ck = coeffs[k]
                if ck:
                    key = stem + (k,)
                    nxt[key] = nxt.get(key, 0) + cv * ck
        acc = nxt
    return acc


def cayley_series(p: SparsePolynomial, b: int, cap: int) -> TruncatedSeries:
    """Truncated expansion of (1-z)^{-b} * p((1-z)/(1+z)) where the Cayley
    map and the prefactor act per variable. b must be an even nonnegative
    integer; b = 0 means no prefactor."""
    if not isinstance(b, int) or b < 0 or b % 2 != 0:
        raise InputError(f"b must be an even nonnegative integer, got {b!r}")
    out = TruncatedSeries(p.rank, cap)
    for e, c in p.terms.items():
        axis = [
            convolve_truncated(
                one_minus_pow_coeffs(m - b, cap), one_plus_pow_coeffs(-m, cap), cap
            )
            for m in e
        ]
        out = out + TruncatedSeries(p.rank, cap, _axis_series_product(p.rank, cap, c, axis))
    return out


def cayley_series_even_weight(p: SparsePolynomial, half_b: int, cap: int) -> TruncatedSeries:
    """Truncated expansion of prod_j (1 - z_j^2)^{-half_b} * p(Cayley(z)).
    Used by the symmetric layer, where the prefactor splits as
    (1-z)^{-half_b} (1+z)^{-half_b} per variable."""
    if not isinstance(half_b, int) or half_b < 0:
        raise InputError("half_b must be a nonnegative integer")
    out = TruncatedSeries(p.rank, cap)
    for e, c in p.terms.items():
        axis = [
            convolve_truncated(
                one_minus_pow_coeffs(m - half_b, cap),
                one_plus_pow_coeffs(-m - half_b, cap),
                cap,
            )
            for m in e
        ]
        out = out + TruncatedSeries(p.rank, cap, _axis_series_product(p.rank, cap, c, axis))
    return out


def geometric_substitution_series(p: SparsePolynomial, b: int, cap: int) -> TruncatedSeries:
    """Truncated expansion of (1-z)^{-b} * p(z/(1-z)): each monomial z^e
    becomes prod_j z_j^{e_j} (1-z_j)^{-(b + e_j)}. b >= 0 integer."""
    if not isinstance(b, int) or b < 0:
        raise InputError("b must be a nonnegative integer")
    out = TruncatedSeries(p.rank, cap)
    for e, c in p.terms.items():
        if sum(e) > cap:
            continue
        axis = []
        for m in e:
            tail = one_minus_pow_coeffs(-(b + m), cap - m)
            axis.append([rat(0)] * m + tail)
        out = out + TruncatedSeries(p.rank, cap, _axis_series_product(p.rank, cap, c, axis))
    return out
