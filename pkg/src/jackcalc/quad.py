"""Floating-point quadrature checks for the measure-side statements.

This is the only module that touches floats. Everything it consumes is
exact (polynomials with Fraction coefficients); coefficients are
converted to float once, at the boundary, and no float ever flows back
into the exact layers.

The weight function splits per axis after passing to the ordered region
and the difference substitution, so every non-smooth factor (the x^{-q}
power at the origin, the |x1-x2|^a factor on the diagonal, the
exponential) is absorbed by a generalized Gauss-Laguerre weight; what
remains under the nodes is smooth. Error estimates compare the n-node
and 2n-node values; they are estimates, not bounds.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import roots_genlaguerre

from .errors import InputError
from .params import AlphaContext, Composition, compositions_of_weight
from .poly import SparsePolynomial
from .special import LaguerreFunction


@dataclass(frozen=True)
class QuadratureSpec:
    """Node budget and tolerance for one quadrature family.

    nodes is the per-axis count for the base run; the error estimate
    always reruns with twice as many. transform is a human-readable
    record of the variable changes in force."""

    r: int
    nodes: int = 32
    transform: str = ""
    tol: float = 0.0

    def __post_init__(self):
        if self.r not in (1, 2):
            raise InputError(f"quadrature supports r in {{1, 2}}, got {self.r}")
        if self.nodes < 8:
            raise InputError(f"need at least 8 nodes, got {self.nodes}")
        tol = self.tol if self.tol else (1e-8 if self.r == 1 else 1e-6)
        if tol <= 0:
            raise InputError("tolerance must be positive")
        object.__setattr__(self, "tol", tol)
        if not self.transform:
            object.__setattr__(
                self,
                "transform",
                "z=2x, gen-laguerre(b-1)"
                if self.r == 1
                else "z=2x ordered, u=z1, v=z2-z1, gen-laguerre(b-q) x gen-laguerre(a)",
            )


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    converged: bool


@dataclass(frozen=True)
class GramReport:
    kappas: list
    matrix: list
    max_offdiag: float
    passed: bool
    all_converged: bool


@dataclass(frozen=True)
class LaplaceReport:
    c: float
    l: int
    n0: float
    residual: float
    passed: bool


def _compiled(p: SparsePolynomial):
    return [(float(c), e) for e, c in p.terms.items()]


def _eval_r1(terms, x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    for c, e in terms:
        out += c * x ** e[0]
    return out


def _eval_r2(terms, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    out = np.zeros(np.broadcast(z1, z2).shape)
    for c, e in terms:
        out += c * z1 ** e[0] * z2 ** e[1]
    return out


def _check_pair(f: LaguerreFunction, g: LaguerreFunction, ctx: AlphaContext):
    if f.b != g.b:
        raise InputError(f"mismatched b: {f.b} vs {g.b}")
    if f.poly.rank != ctx.r or g.poly.rank != ctx.r:
        raise InputError("rank mismatch between functions and context")
    b = float(f.b)
    if b <= float(ctx.q) - 1:
        raise InputError(f"need b > q-1 = {float(ctx.q) - 1}, got b = {b}")
    return b


def _inner_once(f, g, n: int, b: float, ctx: AlphaContext) -> float:
    tf = _compiled(f.poly)
    tg = _compiled(g.poly)
    if ctx.r == 1:
        # <l_f, l_g> = 1/2 int P_f(z) P_g(z) e^{-z} z^{b-1} dz, z = 2x
        s, w = roots_genlaguerre(n, b - 1.0)
        return 0.5 * float(np.sum(w * _eval_r1(tf, s) * _eval_r1(tg, s)))
    # r = 2: ordered region z1 < z2, u = z1, v = z2 - z1; the weight is
    # swap-symmetric, so the full integral is the ordered integral of the
    # symmetrized integrand (NOT 2x the integrand, which is wrong for
    # non-symmetric products). Weight u^{b-q} e^{-2u} on the u axis,
    # v^a e^{-v} on the v axis, smooth leftover (u+v)^{b-q}; u rescaled
    # by s = 2u.
    q = float(ctx.q)
    a = float(ctx.a)
    su, wu = roots_genlaguerre(n, b - q)
    sv, wv = roots_genlaguerre(n, a)
    u = su / 2.0
    z1 = u[:, None]
    z2 = u[:, None] + sv[None, :]
    grid = (
        _eval_r2(tf, z1, z2) * _eval_r2(tg, z1, z2)
        + _eval_r2(tf, z2, z1) * _eval_r2(tg, z2, z1)
    ) * z2 ** (b - q)
    pref = 2.0 ** (3.0 * q - a - b - 5.0)
    return pref * float(np.einsum("i,j,ij->", wu, wv, grid))


def inner_product_dmu(
    f: LaguerreFunction, g: LaguerreFunction, spec: QuadratureSpec, ctx: AlphaContext
) -> QuadResult:
    """Integral of l_f * l_g against the base measure, with an error
    estimate from doubling the node count."""
    b = _check_pair(f, g, ctx)
    if spec.r != ctx.r:
        raise InputError(f"spec is for r={spec.r}, context has r={ctx.r}")
    coarse = _inner_once(f, g, spec.nodes, b, ctx)
    fine = _inner_once(f, g, 2 * spec.nodes, b, ctx)
    err = abs(fine - coarse)
    return QuadResult(
        value=fine, error=err, converged=err <= spec.tol * max(1.0, abs(fine))
    )


def _thread_count() -> int:
    raw = os.environ.get("JACKCALC_THREADS", "")
    try:
        k = int(raw)
    except ValueError:
        return 1
    return max(1, k)


def laguerre_gram(m: int, b, spec: QuadratureSpec, ctx: AlphaContext) -> GramReport:
    """Normalized Gram matrix of the Laguerre functions of weight <= m.
    Off-diagonal magnitudes certify orthogonality; diagonals are the
    (positive) norms before normalization."""
    from .special import laguerre_function

    if m < 0:
        raise InputError("max weight must be >= 0")
    kappas = [
        kap for wgt in range(m + 1) for kap in compositions_of_weight(ctx.r, wgt)
    ]
    funcs = [laguerre_function(kap, b, ctx) for kap in kappas]
    n = len(kappas)
    pairs = [(i, j) for i in range(n) for j in range(i, n)]

    def entry(pair):
        i, j = pair
        return inner_product_dmu(funcs[i], funcs[j], spec, ctx)

    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(entry, pairs))
    else:
        results = [entry(p) for p in pairs]

    raw = [[0.0] * n for _ in range(n)]
    all_conv = True
    for (i, j), res in zip(pairs, results):
        raw[i][j] = raw[j][i] = res.value
        all_conv = all_conv and res.converged
    diag_ok = all(raw[i][i] > 0 for i in range(n))
    norm = [
        [raw[i][j] / math.sqrt(raw[i][i] * raw[j][j]) for j in range(n)]
        for i in range(n)
    ]
    off = max(
        (abs(norm[i][j]) for i in range(n) for j in range(n) if i != j), default=0.0
    )
    return GramReport(
        kappas=kappas,
        matrix=norm,
        max_offdiag=off,
        passed=diag_ok and all_conv and off <= spec.tol,
        all_converged=all_conv,
    )


_LAPLACE_TS = (1.5, 2.0, 3.0)


def _laplace_once(c: float, l: int, t: float, n: int) -> float:
    # int_0^inf e^{-tx} x^{c+l} dmu(x), dmu = x^{-1} dx / 2 at r = 1;
    # frame the nodes with weight x^{c-1} e^{-x} so the t-dependence
    # stays in the integrand and refinement genuinely converges
    s, w = roots_genlaguerre(n, c - 1.0)
    return 0.5 * float(np.sum(w * np.exp(-(t - 1.0) * s) * s**l))


def laplace_check_r1(c, l: int, spec: QuadratureSpec) -> LaplaceReport:
    """Transform of x^{c+l} at several t against the power law
    N0 * (c)_l * t^{-(c+l)}; returns the fitted l-independent constant.
    The exact value of the constant is Gamma(c)/2."""
    if spec.r != 1:
        raise InputError("laplace_check_r1 needs an r=1 spec")
    c = float(c)
    if c <= 0:
        raise InputError("c must be positive")
    if l < 0:
        raise InputError("l must be >= 0")
    poch = 1.0
    for i in range(l):
        poch *= c + i
    fits = []
    conv = True
    for t in _LAPLACE_TS:
        coarse = _laplace_once(c, l, t, spec.nodes)
        fine = _laplace_once(c, l, t, 2 * spec.nodes)
        conv = conv and abs(fine - coarse) <= spec.tol * max(1.0, abs(fine))
        fits.append(fine * t ** (c + l) / poch)
    n0 = sum(fits) / len(fits)
    residual = max(abs(x / n0 - 1.0) for x in fits) if n0 else math.inf
    return LaplaceReport(
        c=c, l=l, n0=n0, residual=residual, passed=conv and residual <= spec.tol
    )


def laplace_error_estimate(c, l: int, t: float, nodes: int) -> float:
    """|I_{2n} - I_n| for the transform integrand; exposed so the
    refinement behavior of the estimator itself can be checked."""
    return abs(_laplace_once(float(c), l, t, 2 * nodes) - _laplace_once(float(c), l, t, nodes))
