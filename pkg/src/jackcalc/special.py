"""Laguerre-type eigenpolynomials, the bilinear exponential kernel, and
the discrete-transform polynomials M built from twisted binomials.

Everything here is exact. Pochhammer factors appear only as ratios
[b]_kappa / [b]_sigma, computed as cancelled products node by node; the
quotient of separately evaluated products would divide by zero at
boundary parameters (r = 2, alpha = 1/2, b = 2 is the smallest case)
where the cancelled ratio is perfectly finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .binomial import (
    BinomialPolynomial,
    binom_laurent,
    binom_poly,
    binom_table,
    identity_perm,
)
from .errors import InputError, ParameterError
from .jack import jack_basis
from .params import AlphaContext, Composition, compositions_of_weight, hook_products, weight
from .poly import SparsePolynomial
from .ratio import rat


def pochhammer_ratio(b, kappa, sigma, ctx: AlphaContext) -> Fraction:
    """[b]_kappa / [b]_sigma with the shared factors cancelled before any
    division. Rows where kappa_j < sigma_j contribute denominator
    factors; a zero among those is a genuine pole and raises.

    Composition labels are read through their partition rearrangement.
    The raw row-by-row product is a different (wrong) quantity here: with
    r = 2, alpha = 1, b = 2 it gives [b]_{(0,1)} = 1 where every kernel
    and transform identity in this module needs 2 = [b]_{(1,0)}."""
    b = rat(b)
    kappa = sorted(ctx.check_composition(kappa), reverse=True)
    sigma = sorted(ctx.check_composition(sigma), reverse=True)
    num = Fraction(1)
    den = Fraction(1)
    for j in range(ctx.r):
        base = b - Fraction(j) / ctx.alpha
        lo, hi = sorted((sigma[j], kappa[j]))
        block = Fraction(1)
        for i in range(lo, hi):
            block *= base + i
        if kappa[j] >= sigma[j]:
            num *= block
        else:
            den *= block
    if den == 0:
        raise ParameterError(
            f"pochhammer ratio [{b}]_{kappa} / [{b}]_{sigma} has an uncancelled pole"
        )
    return num / den


@dataclass(frozen=True)
class LaguerreFunction:
    """The orthogonality-side object: poly(2x) * exp(-p1(x)) * (2x)^{b/2},
    with poly the Laguerre-type eigenpolynomial of index kappa. The
    exponential and the power factor stay symbolic; quadrature folds them
    into its weights."""

    kappa: Composition
    b: Fraction
    poly: SparsePolynomial


def laguerre_poly(kappa, b, ctx: AlphaContext) -> SparsePolynomial:
    """The degree-|kappa| eigenpolynomial

        (-1)^{|kappa|} (e_kappa / d_kappa)
            sum_sigma (-1)^{|sigma|} ([b]_kappa/[b]_sigma)
                      binom(kappa, sigma) calE_sigma(x).

    b may be any rational for which the Pochhammer ratios are finite;
    the measure-side theory wants b > q - 1, but the polynomial itself
    is fine on that closed boundary (the ratios cancel), which the
    expansion sweeps rely on.
    """
    kappa = ctx.check_composition(kappa)
    b = rat(b)
    if b <= 0:
        raise ParameterError(f"b must be positive, got {b}")
    basis = jack_basis(ctx)
    hk = hook_products(kappa, ctx)
    out = SparsePolynomial(ctx.r)
    for sigma, bks in binom_table(kappa, ctx).items():
        ratio = pochhammer_ratio(b, kappa, sigma, ctx)
        if ratio == 0 or bks == 0:
            continue
        coef = Fraction(-1) ** weight(sigma) * ratio * bks
        out = out + basis.calE(sigma).scale(coef)
    return out.scale(Fraction(-1) ** weight(kappa) * hk.e / hk.d)


def laguerre_function(kappa, b, ctx: AlphaContext) -> LaguerreFunction:
    kappa = ctx.check_composition(kappa)
    return LaguerreFunction(kappa=kappa, b=rat(b), poly=laguerre_poly(kappa, b, ctx))


@dataclass(frozen=True)
class KernelTable:
    """Truncation of the bilinear kernel sum_eta alpha^{|eta|}/d'_eta *
    calE_eta(t) E_eta(y) over |eta| <= cap. Entries map eta to the
    weight and the two polynomial factors."""

    r: int
    cap: int
    entries: dict

    def bipolynomial(self) -> SparsePolynomial:
        """Rank-2r polynomial, t block first, then y block."""
        out = SparsePolynomial(2 * self.r)
        for coef, calE, E in self.entries.values():
            out = out + calE.scale(coef).tensor(E)
        return out

    def contract_second(self, point) -> SparsePolynomial:
        """Substitute the y block at a rational point."""
        point = [rat(x) for x in point]
        if len(point) != self.r:
            raise InputError("contraction point has wrong length")
        out = SparsePolynomial(self.r)
        for coef, calE, E in self.entries.values():
            out = out + calE.scale(coef * E.evaluate(point))
        return out


def kernel_truncated(D: int, ctx: AlphaContext) -> KernelTable:
    if D < 0:
        raise InputError("cap must be >= 0")
    basis = jack_basis(ctx)
    entries = {}
    for m in range(D + 1):
        for eta in compositions_of_weight(ctx.r, m):
            h = hook_products(eta, ctx)
            entries[eta] = (ctx.alpha**m / h.d_prime, basis.calE(eta), basis.E(eta).poly)
    return KernelTable(r=ctx.r, cap=D, entries=entries)


@dataclass(frozen=True)
class MPValue:
    kappa: Composition
    w: tuple[int, ...]
    b: Fraction
    lam: tuple[Fraction, ...]
    value: Fraction


def _mp_top_argument(lam, b, ctx: AlphaContext) -> tuple[Fraction, ...]:
    # -b/2 + lam* + (rho/(-2))*, the label the twisted binomial family
    # is evaluated at; rho here is the context shift vector
    half_b = rat(b) / 2
    lam_star = tuple(reversed([rat(x) for x in lam]))
    rho_star = tuple(reversed([-x / 2 for x in ctx.rho]))
    return tuple(-half_b + ls + rs for ls, rs in zip(lam_star, rho_star))


def _decaying_label(top, b, ctx: AlphaContext):
    """If top == -b/2 - eta* for a composition eta, return eta, else None.
    At such labels the twisted binomial has two distinct meanings: the
    polynomial continuation of the composition family and the value on
    the decaying realization x^{-b/2} calE_eta(1/x). They agree for
    r = 1 and split for r >= 2; the transform identities live on the
    decaying branch."""
    half_b = rat(b) / 2
    eta_star = tuple(-t - half_b for t in top)
    if all(x.denominator == 1 and x >= 0 for x in eta_star):
        return tuple(int(x) for x in reversed(eta_star))
    return None


def mp_value(kappa, lam, w, b, ctx: AlphaContext) -> MPValue:
    """Exact value of the discrete-transform polynomial

        M_kappa^w(lam) = (-1)^{|kappa|} (e_kappa/d_kappa)
            sum_sigma ([b]_kappa/[b]_sigma)
                      (d'_sigma d_sigma / (alpha^{|sigma|} e_sigma))
                      2^{|sigma|} binom(kappa, sigma)
                      binom(-b/2 + lam* + rho*, sigma)_w.

    When the label -b/2 + lam* + rho* has the form -b/2 - eta* for a
    composition eta (the transform lattice), the twisted binomial is
    taken on the decaying branch (binom_laurent); elsewhere it is the
    interpolated polynomial family (see BinomialPolynomial for the chart
    rules). The sign of the 2-power is calibrated by the one-variable
    reduction.
    """
    kappa = ctx.check_composition(kappa)
    lam = tuple(rat(x) for x in lam)
    if len(lam) != ctx.r:
        raise InputError(f"lambda {lam} has wrong length for r={ctx.r}")
    b = rat(b)
    if w is None:
        w = identity_perm(ctx.r)
    w = tuple(w)
    top = _mp_top_argument(lam, b, ctx)
    eta = _decaying_label(top, b, ctx)
    if eta is not None and (rat(b) / 2).denominator != 1:
        eta = None  # the decaying realization needs an integer power
    hk = hook_products(kappa, ctx)
    total = Fraction(0)
    for sigma, bks in binom_table(kappa, ctx).items():
        if bks == 0:
            continue
        ratio = pochhammer_ratio(b, kappa, sigma, ctx)
        if ratio == 0:
            continue
        hs = hook_products(sigma, ctx)
        m = weight(sigma)
        term = ratio * (hs.d_prime * hs.d) / (ctx.alpha**m * hs.e)
        # the 2-power is positive: the alternating variant fails the
        # one-variable reduction (see calibration notes)
        term *= Fraction(2) ** m * bks
        if eta is not None:
            term *= binom_laurent(eta, int(rat(b) / 2), sigma, ctx, w=w)
        else:
            term *= binom_poly(sigma, ctx, w=w).evaluate(top)
        total += term
    value = Fraction(-1) ** weight(kappa) * (hk.e / hk.d) * total
    return MPValue(kappa=kappa, w=w, b=b, lam=lam, value=value)


def hyp2f1_terminating(k: int, beta, gamma, z) -> Fraction:
    """The finite sum sum_{l=0}^{k} (-k)_l (beta)_l / ((gamma)_l l!) z^l.
    Raises on a zero (gamma)_l that the terminating numerator does not
    kill first."""
    if not isinstance(k, int) or k < 0:
        raise InputError(f"k must be a nonnegative integer, got {k!r}")
    beta = rat(beta)
    gamma = rat(gamma)
    z = rat(z)
    total = Fraction(1)
    num = Fraction(1)
    den = Fraction(1)
    for l in range(1, k + 1):
        num *= (-k + l - 1) * (beta + l - 1) * z
        den *= (gamma + l - 1) * l
        if den == 0:
            if num == 0:
                break
            raise ParameterError(f"(gamma)_{l} vanishes for gamma={gamma}")
        total += num / den
    return total
