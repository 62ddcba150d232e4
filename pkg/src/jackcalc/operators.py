"""Transpositions, divided differences, Dunkl and Cherednik operators.

All operators act on SparsePolynomial values and are exact. Divided
differences are expanded per term through the geometric-sum identity
(x_hi^b x_lo^a - x_hi^a x_lo^b)/(x_hi - x_lo) = x_hi^a x_lo^a *
sum_{k} x_hi^{b-a-1-k} x_lo^k, so no polynomial division ever happens
and no remainder can appear.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InputError
from .params import AlphaContext
from .poly import SparsePolynomial


def apply_transposition(p: SparsePolynomial, i: int, j: int) -> SparsePolynomial:
    if not (1 <= i < j <= p.rank):
        raise InputError(f"transposition ({i},{j}) out of range for rank {p.rank}")
    return p.swap_vars(i, j)


def apply_permutation(p: SparsePolynomial, w) -> SparsePolynomial:
    """w in one-line image notation, 1-based: x_i -> x_{w[i-1]}."""
    return p.permute_vars(w)


def divided_difference(p: SparsePolynomial, lo: int, hi: int) -> SparsePolynomial:
    """(p - s_{lo,hi} p) / (x_hi - x_lo), exact. Requires 1 <= lo < hi <= rank."""
    if not (1 <= lo < hi <= p.rank):
        raise InputError(f"divided difference indices ({lo},{hi}) out of range")
    out: dict[tuple, Fraction] = {}
    li, hi_i = lo - 1, hi - 1
    for e, c in p.terms.items():
        a, b = e[li], e[hi_i]
        if a == b:
            continue
        m, d = min(a, b), abs(a - b)
        cc = c if b > a else -c
        el = list(e)
        for k in range(d):
            el[li] = m + k
            el[hi_i] = m + d - 1 - k
            key = tuple(el)
            s = out.get(key, 0) + cc
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return SparsePolynomial(p.rank, out)


def _check_ctx(p: SparsePolynomial, ctx: AlphaContext):
    if p.rank != ctx.r:
        raise InputError(f"polynomial rank {p.rank} does not match context rank {ctx.r}")


def apply_dunkl(p: SparsePolynomial, j: int, ctx: AlphaContext) -> SparsePolynomial:
    """T_j = d/dx_j + (1/alpha) sum_{i != j} (1 - s_{ij})/(x_j - x_i)."""
    _check_ctx(p, ctx)
    if not (1 <= j <= ctx.r):
        raise InputError(f"operator index {j} out of range")
    inv_a = 1 / ctx.alpha
    out = p.partial(j)
    for i in range(1, ctx.r + 1):
        if i == j:
            continue
        if i < j:
            # (1 - s_{ij})/(x_j - x_i) = divided_difference(p, i, j)
            out = out + divided_difference(p, i, j).scale(inv_a)
        else:
            # (1 - s_{ij})/(x_j - x_i) = -divided_difference(p, j, i)
            out = out - divided_difference(p, j, i).scale(inv_a)
    return out


def apply_cherednik(p: SparsePolynomial, j: int, ctx: AlphaContext) -> SparsePolynomial:
    """U_j = x_j d/dx_j
           + (1/alpha) sum_{i<j} x_j/(x_j - x_i) (1 - s_{ij})
           + (1/alpha) sum_{k>j} x_k/(x_j - x_k) (1 - s_{jk})
           - rho_j / 2."""
    _check_ctx(p, ctx)
    if not (1 <= j <= ctx.r):
        raise InputError(f"operator index {j} out of range")
    inv_a = 1 / ctx.alpha
    out = p.partial(j).mul_var(j)
    for i in range(1, j):
        out = out + divided_difference(p, i, j).mul_var(j).scale(inv_a)
    for k in range(j + 1, ctx.r + 1):
        # x_k/(x_j - x_k)(1 - s_{jk}) = -x_k * divided_difference(., j, k)
        out = out - divided_difference(p, j, k).mul_var(k).scale(inv_a)
    return out - p.scale(ctx.rho[j - 1] / 2)


def apply_dunkl_monomial(exp, target: SparsePolynomial, ctx: AlphaContext) -> SparsePolynomial:
    """T^exp applied to target: T_1^{e_1} ... T_r^{e_r}. The T_j commute,
    so the application order does not matter; we go left to right."""
    out = target
    for j, k in enumerate(exp, start=1):
        for _ in range(k):
            if out.is_zero():
                return out
            out = apply_dunkl(out, j, ctx)
    return out


def apply_dunkl_poly(
    coeff_poly: SparsePolynomial, target: SparsePolynomial, ctx: AlphaContext
) -> SparsePolynomial:
    """p(T_1, ..., T_r) applied to target, for p = coeff_poly."""
    _check_ctx(coeff_poly, ctx)
    _check_ctx(target, ctx)
    out = SparsePolynomial(ctx.r)
    for e, c in coeff_poly.sorted_terms():
        out = out + apply_dunkl_monomial(e, target, ctx).scale(c)
    return out
