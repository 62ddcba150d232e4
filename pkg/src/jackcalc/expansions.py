"""Mechanical verification of the expansion identities.

The three families (Jack, Laguerre-type, discrete-transform M) are tied
together by generating-function identities. Each identity is computed by
two or three independent routes and compared exactly; a nonzero residual
or a failed row is a defect, never a tolerance.

Conventions that the one-variable reductions fix and the sweeps rely on:

* the generating-kernel identity pairs the normalized basis on the first
  slot with the monic basis on the substituted slot;
* the finite-sum route for the Cayley coefficients uses the decaying
  realization for its negative-label binomials (binom_laurent), not the
  polynomial continuation; the continuation disagrees at those labels
  for r >= 2 and breaks the identity;
* the three-way consistency check runs the series routes at the shifted
  index eta + b/2 against the M route at lambda = -(eta + rho/(-2));
  pairing both sides at the same index fails already for r = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .binomial import (
    BinomialPolynomial,
    binom_laurent,
    binom_table,
    identity_perm,
    interpolate_spectral,
)
from .errors import InputError
from .jack import jack_basis
from .params import (
    AlphaContext,
    Composition,
    compositions_of_weight,
    hook_products,
    partition_of,
    partitions_of_weight,
    total_key,
    weight,
)
from .poly import (
    SparsePolynomial,
    cayley_series,
    cayley_series_even_weight,
    geometric_substitution_series,
)
from .special import laguerre_poly, mp_value


def _check_even_b(b) -> int:
    if not isinstance(b, int) or b <= 0 or b % 2 != 0:
        raise InputError(f"b must be an even positive integer, got {b!r}")
    return b


def lemma41_residual(D: int, b: int, ctx: AlphaContext) -> SparsePolynomial:
    """Difference of the two sides of the Laguerre generating identity,
    as a rank-2r polynomial (x block, then z block), bi-truncated at
    degree D in each block. Zero means the identity holds through the
    truncation; each eta term of the kernel side has z-degree at least
    |eta|, so the truncation loses nothing below degree D."""
    b = _check_even_b(b)
    if D < 0:
        raise InputError("cap must be >= 0")
    basis = jack_basis(ctx)
    lhs = SparsePolynomial(2 * ctx.r)
    rhs = SparsePolynomial(2 * ctx.r)
    for m in range(D + 1):
        for eta in compositions_of_weight(ctx.r, m):
            h = hook_products(eta, ctx)
            wgt = ctx.alpha**m / h.d_prime
            # kernel side at (-x, z/(1-z)) with the (1-z)^{-b} prefactor
            subst = geometric_substitution_series(basis.E(eta).poly, b, D)
            lhs = lhs + basis.calE(eta).scale(wgt * Fraction(-1) ** m).tensor(
                subst.to_polynomial()
            )
            # Laguerre side
            rhs = rhs + laguerre_poly(eta, b, ctx).scale(
                (-ctx.alpha) ** m / h.d_prime
            ).tensor(basis.calE(eta))
    return lhs - rhs


def c_direct(eta, b: int, D: int, ctx: AlphaContext) -> dict[Composition, Fraction]:
    """Coefficients of the Cayley-substituted normalized eigenpolynomial:
    expand (1-z)^{-b} calE_eta((1-z)/(1+z)) over the normalized basis,
    through total degree D."""
    b = _check_even_b(b)
    eta = ctx.check_composition(eta)
    if any(2 * x < b for x in eta):
        raise InputError(f"need eta_j >= b/2 entrywise, got eta={eta}, b={b}")
    basis = jack_basis(ctx)
    series = cayley_series(basis.calE(eta), b, D)
    out = {}
    for kappa, c in basis.to_E_basis(series).items():
        out[kappa] = c * basis.E(kappa).ones_value
    return out


def c_formula(eta, kappa, b: int, ctx: AlphaContext) -> Fraction:
    """Finite-sum route for the same coefficients:

        (-1)^{|eta| - r b} sum_sigma (-2)^{|sigma|}
            binom(eta - b, sigma) binom_laurent(sigma, b, kappa).

    The sigma sum is the expansion table of eta - b, so it is finite and
    the truncation is built in. Requires eta - b >= 0 entrywise."""
    b = _check_even_b(b)
    eta = ctx.check_composition(eta)
    kappa = ctx.check_composition(kappa)
    em = tuple(x - b for x in eta)
    if any(x < 0 for x in em):
        raise InputError(f"need eta_j >= b entrywise, got eta={eta}, b={b}")
    sign = Fraction(-1) ** (weight(eta) - ctx.r * b)
    total = Fraction(0)
    for sigma, bes in binom_table(em, ctx).items():
        total += Fraction(-2) ** weight(sigma) * bes * binom_laurent(sigma, b, kappa, ctx)
    return sign * total


@dataclass(frozen=True)
class ConsistencyReport:
    eta: Composition
    b: int
    cap: int
    rows: dict
    passed: bool


def thm43_consistency(eta, b: int, D: int, ctx: AlphaContext) -> ConsistencyReport:
    """Three-way check tying the Cayley expansion to the M family.

    For each |kappa| <= D compares (i) the series route and (ii) the
    finite-sum route, both at the shifted index eta + b/2, against (iii)
    (-alpha)^{|kappa|}/d'_kappa * M_kappa(lambda) at lambda = -(eta +
    rho/(-2)) with the identity twist. The shift pairing is forced by
    the one-variable reduction; see the module docstring."""
    b = _check_even_b(b)
    eta = ctx.check_composition(eta)
    if any(2 * x < b for x in eta):
        raise InputError(f"need eta_j >= b/2 entrywise, got eta={eta}, b={b}")
    shifted = tuple(x + b // 2 for x in eta)
    direct = c_direct(shifted, b, D, ctx)
    lam = tuple(-(x + (-rho_j) / 2) for x, rho_j in zip(eta, ctx.rho))
    rows = {}
    passed = True
    for m in range(D + 1):
        for kappa in compositions_of_weight(ctx.r, m):
            h = hook_products(kappa, ctx)
            v_direct = direct.get(kappa, Fraction(0))
            v_formula = c_formula(shifted, kappa, b, ctx)
            mp = mp_value(kappa, lam, identity_perm(ctx.r), b, ctx)
            v_mp = (-ctx.alpha) ** m / h.d_prime * mp.value
            rows[kappa] = (v_direct, v_formula, v_mp)
            if not (v_direct == v_formula == v_mp):
                passed = False
    return ConsistencyReport(eta=eta, b=b, cap=D, rows=rows, passed=passed)


def sym_jack(kappa, ctx: AlphaContext) -> SparsePolynomial:
    """Symmetrization of E_kappa over the full symmetric group,
    normalized to value 1 at (1, ..., 1). kappa must be a partition."""
    kappa = ctx.check_composition(kappa)
    if any(kappa[i] < kappa[i + 1] for i in range(ctx.r - 1)):
        raise InputError(f"{kappa} is not a partition")
    base = jack_basis(ctx).E(kappa).poly
    out = SparsePolynomial(ctx.r)
    for w in permutations(range(1, ctx.r + 1)):
        out = out + base.permute_vars(w)
    ones = out.evaluate_ones()
    out = out.scale(1 / ones)
    for i in range(1, ctx.r):
        if out.swap_vars(i, i + 1) != out:
            raise RuntimeError(f"symmetrization of E_{kappa} is not symmetric")
    return out


_omega_cache: dict[tuple, SparsePolynomial] = {}


def _omega(kappa, ctx: AlphaContext) -> SparsePolynomial:
    key = (ctx.r, ctx.alpha, tuple(kappa))
    p = _omega_cache.get(key)
    if p is None:
        p = sym_jack(kappa, ctx)
        _omega_cache[key] = p
    return p


def to_omega_basis(p, ctx: AlphaContext) -> dict[Composition, Fraction]:
    """Expand a symmetric polynomial over the normalized symmetric basis,
    degree slice by degree slice. Triangular against the graded dominance
    order with the lexicographic tie-break."""
    if hasattr(p, "to_polynomial"):
        p = p.to_polynomial()
    out: dict[Composition, Fraction] = {}
    for m, sl in p.homogeneous_slices().items():
        rem = dict(sl.terms)
        for kappa in reversed(partitions_of_weight(ctx.r, m)):
            om = _omega(kappa, ctx)
            lead = om.terms.get(kappa)
            if lead is None:
                raise RuntimeError(f"Omega_{kappa} is missing its leading monomial")
            coef = rem.get(kappa, Fraction(0)) / lead
            if coef == 0:
                continue
            out[kappa] = coef
            for e, c in om.terms.items():
                s = rem.get(e, 0) - coef * c
                if s:
                    rem[e] = s
                else:
                    rem.pop(e, None)
        if rem:
            raise RuntimeError(
                f"symmetric change of basis left a remainder in degree {m}: {sorted(rem)[:4]}"
            )
    return out


def q_direct(eta, b: int, D: int, ctx: AlphaContext) -> dict[Composition, Fraction]:
    """Symmetric-layer analogue of c_direct: expand

        prod_j (1 - z_j^2)^{-b/2} * Omega_{eta - b/2}((1-z)/(1+z))

    over the normalized symmetric basis through degree D. eta must be a
    partition with eta_j >= b/2."""
    b = _check_even_b(b)
    eta = ctx.check_composition(eta)
    if any(eta[i] < eta[i + 1] for i in range(ctx.r - 1)):
        raise InputError(f"{eta} is not a partition")
    if any(2 * x < b for x in eta):
        raise InputError(f"need eta_j >= b/2 entrywise, got eta={eta}, b={b}")
    base = tuple(x - b // 2 for x in eta)
    series = cayley_series_even_weight(_omega(base, ctx), b // 2, D)
    return to_omega_basis(series, ctx)


def q_poly(kappa, b: int, ctx: AlphaContext) -> BinomialPolynomial:
    """Interpolate eta -> q_direct(eta)[kappa] over the shifted principal
    partition lattice (same policy as binom_poly), producing a spectral
    polynomial evaluable at rational vectors."""
    b = _check_even_b(b)
    kappa = ctx.check_composition(kappa)
    if any(kappa[i] < kappa[i + 1] for i in range(ctx.r - 1)):
        raise InputError(f"{kappa} is not a partition")
    n = weight(kappa)
    cache: dict[Composition, dict] = {}

    def values(eta: Composition) -> Fraction:
        table = cache.get(eta)
        if table is None:
            table = q_direct(eta, b, n, ctx)
            cache[eta] = table
        return table.get(kappa, Fraction(0))

    poly = interpolate_spectral(values, n, ctx, shift=b // 2)
    return BinomialPolynomial(nu=kappa, w=None, poly=poly, degree_bound=n, ctx=ctx)
