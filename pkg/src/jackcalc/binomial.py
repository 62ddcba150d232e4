"""Generalized binomial coefficients.

Two routes are implemented and must agree:

* expansion route: binom(eta, nu) is the coefficient of calE_nu(t) in
  calE_eta(1 + t);
* operator route: E_nu(T) applied to calE_eta (optionally precomposed
  with a variable permutation w) and evaluated at (1, ..., 1) equals
  (d'_nu / alpha^{|nu|}) binom(eta, nu)_w. The proportionality constant
  is exactly 1 in the expansion normalization; it was calibrated once at
  w = identity and is frozen (the consistency sweep in the tests keeps
  it honest).

binom(., nu) extends to a polynomial in the top argument of total degree
|nu|. The extension is a polynomial in the spectral coordinates, not in
the raw entries of the top argument: interpolating raw integer grids
fails the degree bound already at r = 2, |nu| = 1, because the value at
a non-partition composition eta carries the rank corrections of the
spectral vector. We therefore interpolate on the principal partition
lattice {mu : mu_1 <= |nu|} in the coordinates y = spectral(mu), where
the two charts agree, and evaluate through the chart rules documented on
BinomialPolynomial. Faithfulness at every integer composition and
stability on the enlarged lattice are both checked.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DegreeCheckFailure, InputError
from .jack import jack_basis, spectral_vector
from .operators import apply_dunkl, apply_dunkl_poly
from .params import (
    AlphaContext,
    Composition,
    compositions_of_weight,
    hook_products,
    weight,
)
from .poly import SparsePolynomial
from .ratio import rat

# Operator-route constant relative to the expansion normalization,
# fixed by the w = identity calibration. Do not edit without rerunning
# the consistency sweep.
OPERATOR_ROUTE_CONSTANT = Fraction(1)

_lock = threading.Lock()
_table_cache: dict[tuple, dict[Composition, Fraction]] = {}
_wtable_cache: dict[tuple, dict[Composition, Fraction]] = {}
_poly_cache: dict[tuple, "BinomialPolynomial"] = {}


def identity_perm(r: int) -> tuple[int, ...]:
    return tuple(range(1, r + 1))


def _check_perm(w, r: int) -> tuple[int, ...]:
    w = tuple(w)
    if sorted(w) != list(range(1, r + 1)):
        raise InputError(f"{w} is not a permutation of 1..{r}")
    return w


def binom_table(eta, ctx: AlphaContext, D: int | None = None) -> dict[Composition, Fraction]:
    """All binom(eta, nu) for |nu| <= min(D, |eta|), by expanding
    calE_eta(1+t) over the normalized basis."""
    eta = ctx.check_composition(eta)
    key = (ctx.r, ctx.alpha, eta)
    table = _table_cache.get(key)
    if table is None:
        basis = jack_basis(ctx)
        shifted = basis.calE(eta).shift_vars(1)
        coeffs = basis.to_E_basis(shifted)
        table = {}
        for nu, c in coeffs.items():
            table[nu] = c * basis.E(nu).ones_value
        with _lock:
            table = _table_cache.setdefault(key, table)
    cap = weight(eta) if D is None else min(D, weight(eta))
    return {nu: v for nu, v in table.items() if weight(nu) <= cap}


def binom_w_table(eta, w, ctx: AlphaContext, max_weight: int | None = None) -> dict[Composition, Fraction]:
    """All binom(eta, nu)_w for |nu| <= |eta| via the Dunkl operator
    route. Images T^sigma(calE_eta o w) are built once over the graded
    exponent lattice and every nu is contracted against them."""
    eta = ctx.check_composition(eta)
    w = _check_perm(w, ctx.r)
    cap = weight(eta) if max_weight is None else min(max_weight, weight(eta))
    key = (ctx.r, ctx.alpha, eta, w)
    full = _wtable_cache.get(key)
    if full is None:
        basis = jack_basis(ctx)
        g = basis.calE(eta).permute_vars(w)
        images: dict[Composition, SparsePolynomial] = {(0,) * ctx.r: g}
        ones: dict[Composition, Fraction] = {(0,) * ctx.r: g.evaluate_ones()}
        for m in range(1, weight(eta) + 1):
            for sigma in compositions_of_weight(ctx.r, m):
                j = next(i for i, s in enumerate(sigma) if s > 0)
                prev = sigma[:j] + (sigma[j] - 1,) + sigma[j + 1 :]
                img = apply_dunkl(images[prev], j + 1, ctx)
                images[sigma] = img
                ones[sigma] = img.evaluate_ones()
        full = {}
        for m in range(weight(eta) + 1):
            for nu in compositions_of_weight(ctx.r, m):
                h = hook_products(nu, ctx)
                acc = Fraction(0)
                for e, c in jack_basis(ctx).E(nu).poly.terms.items():
                    acc += c * ones[e]
                val = OPERATOR_ROUTE_CONSTANT * acc * ctx.alpha**m / h.d_prime
                if val:
                    full[nu] = val
        with _lock:
            full = _wtable_cache.setdefault(key, full)
    return {nu: v for nu, v in full.items() if weight(nu) <= cap}


def binom_w(eta, nu, w, ctx: AlphaContext) -> Fraction:
    nu = ctx.check_composition(nu)
    if weight(nu) > weight(tuple(eta)):
        return Fraction(0)
    return binom_w_table(eta, w, ctx).get(nu, Fraction(0))


def _inverse_vars(p: SparsePolynomial) -> SparsePolynomial:
    # exponent negation; the sparse representation tolerates negative
    # exponents and the Dunkl recursion below never clears them wrongly
    return SparsePolynomial(p.rank, {tuple(-x for x in e): c for e, c in p.terms.items()})


def binom_laurent(mu, c: int, nu, ctx: AlphaContext, w=None) -> Fraction:
    """Binomial at the integer label -c - mu*, computed by the operator
    route on the decaying realization x^{-c} calE_mu(1/x).

    These are the values the finite-sum expansion identities need at
    negative integer labels. They are NOT the polynomial continuation of
    the composition family: the two agree for r = 1 but differ at such
    labels for r >= 2 (the label sits where the eigenvalue problem is
    resonant and the decaying realization is a different solution branch
    than the one the interpolation continues). See the calibration notes
    in the README.
    """
    mu = ctx.check_composition(mu)
    nu = ctx.check_composition(nu)
    if not isinstance(c, int) or c < 0:
        raise InputError(f"c must be a nonnegative integer, got {c!r}")
    if w is not None:
        w = _check_perm(w, ctx.r)
    basis = jack_basis(ctx)
    f = _inverse_vars(basis.calE(mu))
    if c:
        for j in range(1, ctx.r + 1):
            f = f.mul_var(j, -c)
    if w is not None:
        f = f.permute_vars(w)
    val = apply_dunkl_poly(basis.E(nu).poly, f, ctx).evaluate_ones()
    h = hook_products(nu, ctx)
    return val * ctx.alpha ** weight(nu) / h.d_prime


@dataclass(frozen=True)
class BinomialPolynomial:
    """A coefficient family interpolated over the principal partition
    lattice, stored as an exact polynomial in the spectral coordinates.

    Evaluation charts:

    * integer compositions are mapped to their spectral vector, so the
      polynomial reproduces the defining tables at every composition,
      not only on the interpolation lattice;
    * any other rational vector v uses the affine chart y_j = v_j -
      rho_j/2, the continuation pinned to partitions (where the two
      charts coincide).
    """

    nu: Composition
    w: tuple[int, ...] | None
    poly: SparsePolynomial
    degree_bound: int
    ctx: AlphaContext

    def chart(self, top) -> tuple[Fraction, ...]:
        top = tuple(top)
        if len(top) != self.ctx.r:
            raise InputError(f"top argument {top} has wrong length for r={self.ctx.r}")
        if all(isinstance(x, int) and x >= 0 for x in top):
            return spectral_vector(top, self.ctx)
        rho = self.ctx.rho
        return tuple(rat(x) - rho[j] / 2 for j, x in enumerate(top))

    def evaluate(self, top) -> Fraction:
        return self.poly.evaluate(self.chart(top))


def principal_lattice(n: int, r: int) -> list[Composition]:
    """Partitions mu with mu_1 <= n, padded to length r. Their count
    equals the number of monomials of total degree <= n in r variables,
    which is what makes the interpolation square."""
    out: list[Composition] = []

    def rec(prefix: list[int], cap: int):
        if len(prefix) == r:
            out.append(tuple(prefix))
            return
        for v in range(cap, -1, -1):
            rec(prefix + [v], v)

    rec([], n)
    return out


def _monomials_upto(n: int, r: int) -> list[Composition]:
    return [e for e in product(range(n + 1), repeat=r) if sum(e) <= n]


def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    # Gauss-Jordan over Fractions; the lattice systems are small and
    # exactness matters more than speed
    n = len(rows)
    m = len(rows[0])
    aug = [list(rows[i]) + [rhs[i]] for i in range(n)]
    pivots = []
    row = 0
    for col in range(m):
        sel = next((i for i in range(row, n) if aug[i][col] != 0), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        pv = aug[row][col]
        aug[row] = [x / pv for x in aug[row]]
        for i in range(n):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    if row < n:
        for i in range(row, n):
            if aug[i][m] != 0:
                raise InputError("inconsistent interpolation system")
    sol = [Fraction(0)] * m
    for i, col in enumerate(pivots):
        sol[col] = aug[i][m]
    return sol


def interpolate_spectral(
    values_fn, degree: int, ctx: AlphaContext, shift: int = 0
) -> SparsePolynomial:
    """Fit the unique polynomial of total degree <= degree in the
    spectral coordinates through values_fn(mu) on the principal lattice,
    then recheck every value on the enlarged lattice. values_fn takes a
    partition (length-r tuple) and returns a Fraction. A nonzero shift
    translates every lattice point by shift * (1, ..., 1) before both
    the call and the chart, for families only defined past a margin."""
    mons = _monomials_upto(degree, ctx.r)

    def lattice(n):
        for mu in principal_lattice(n, ctx.r):
            yield tuple(x + shift for x in mu)

    rows = []
    rhs = []
    for mu in lattice(degree):
        y = spectral_vector(mu, ctx)
        rows.append([_power_product(y, e) for e in mons])
        rhs.append(rat(values_fn(mu)))
    sol = _solve_square(rows, rhs)
    fitted = SparsePolynomial(ctx.r, {e: c for e, c in zip(mons, sol)})
    for mu in lattice(degree + 1):
        got = fitted.evaluate(spectral_vector(mu, ctx))
        want = rat(values_fn(mu))
        if got != want:
            raise DegreeCheckFailure(
                f"degree-{degree} spectral interpolation is unstable: value at "
                f"{mu} is {want}, polynomial gives {got}"
            )
    return fitted


def _power_product(y, e) -> Fraction:
    v = Fraction(1)
    for yi, ei in zip(y, e):
        if ei:
            v *= yi**ei
    return v


def binom_poly(nu, ctx: AlphaContext, w=None) -> BinomialPolynomial:
    """Interpolate binom(., nu)_w over the principal partition lattice of
    degree |nu| in spectral coordinates; verify stability on the degree
    |nu|+1 lattice (DegreeCheckFailure otherwise)."""
    nu = ctx.check_composition(nu)
    if w is not None:
        w = _check_perm(w, ctx.r)
        if w == identity_perm(ctx.r):
            w = None
    key = (ctx.r, ctx.alpha, nu, w)
    bp = _poly_cache.get(key)
    if bp is not None:
        return bp
    n = weight(nu)
    if w is None:
        values = lambda mu: binom_table(mu, ctx).get(nu, Fraction(0))
    else:
        values = lambda mu: binom_w_table(mu, w, ctx).get(nu, Fraction(0))
    poly = interpolate_spectral(values, n, ctx)
    if poly.total_degree() > n:
        raise DegreeCheckFailure(
            f"binomial polynomial for nu={nu}, w={w} has total degree "
            f"{poly.total_degree()} > {n}"
        )
    bp = BinomialPolynomial(nu=nu, w=w, poly=poly, degree_bound=n, ctx=ctx)
    with _lock:
        bp = _poly_cache.setdefault(key, bp)
    return bp


def evaluate_binom(bp: BinomialPolynomial, top) -> Fraction:
    return bp.evaluate(top)
