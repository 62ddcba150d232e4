"""Non-symmetric Jack polynomials by triangular eigen-solve.

Within a fixed degree slice the Cherednik operators are triangular with
respect to the composition order: the image of a monomial x^zeta is
supported on {xi : xi <= zeta}. A generic rational combination
sum_j t_j U_j therefore has a triangular matrix on the slice, and E_eta
is the eigenvector with leading coefficient 1 at x^eta, found by plain
back-substitution over the down-set of eta. Everything is verified
exactly before a JackPolynomial is returned.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, SpectralDegeneracy, TriangularityError
from .params import (
    AlphaContext,
    Composition,
    DEFAULT_ORIENTATION,
    Orientation,
    compare_compositions,
    evaluation_at_ones,
    sorted_slice,
    weight,
)
from .poly import SparsePolynomial
from .operators import apply_cherednik


def spectral_vector(eta, ctx: AlphaContext) -> tuple[Fraction, ...]:
    """Eigenvalue of U_j on E_eta:
    eta_j + (1/alpha)(#{i<j: eta_i < eta_j} - #{k>j: eta_k > eta_j}) - rho_j/2.
    This is the diagonal entry of U_j at the monomial x^eta."""
    eta = ctx.check_composition(eta)
    inv_a = 1 / ctx.alpha
    rho = ctx.rho
    out = []
    for j in range(ctx.r):
        before = sum(1 for i in range(j) if eta[i] < eta[j])
        after = sum(1 for k in range(j + 1, ctx.r) if eta[k] > eta[j])
        out.append(Fraction(eta[j]) + inv_a * (before - after) - rho[j] / 2)
    return tuple(out)


@dataclass(frozen=True)
class JackPolynomial:
    eta: Composition
    poly: SparsePolynomial
    spectral: tuple[Fraction, ...]
    ones_value: Fraction


class _SliceData:
    """Cherednik images of every monomial in one degree slice."""

    __slots__ = ("comps", "pos", "images", "diag", "combo", "lam", "t")

    def __init__(self, ctx: AlphaContext, orientation: Orientation, m: int):
        self.comps = sorted_slice(ctx.r, m, orientation)
        self.pos = {c: i for i, c in enumerate(self.comps)}
        self.images: dict[Composition, list[dict[Composition, Fraction]]] = {}
        for c in self.comps:
            mono = SparsePolynomial.monomial(ctx.r, c)
            per_j = []
            for j in range(1, ctx.r + 1):
                img = apply_cherednik(mono, j, ctx)
                per_j.append(dict(img.terms))
            self.images[c] = per_j
        # Triangularity of every image; the reversed orientation fails here.
        for c in self.comps:
            for img in self.images[c]:
                for xi in img:
                    if xi != c and not compare_compositions(xi, c, orientation):
                        raise TriangularityError(
                            f"U image of x^{c} contains x^{xi}, which is not "
                            f"below it in the {orientation.value} order"
                        )
        self.diag = {c: tuple(self.images[c][j].get(c, Fraction(0)) for j in range(ctx.r)) for c in self.comps}
        # Generic combination sum_j t_j U_j with all-distinct diagonal.
        for attempt in range(3):
            rng = random.Random(90210 + attempt)
            t = tuple(Fraction(rng.randint(1, 1000), rng.randint(1, 50)) for _ in range(ctx.r))
            lam = {c: sum(ti * di for ti, di in zip(t, self.diag[c])) for c in self.comps}
            if len(set(lam.values())) == len(self.comps):
                break
        else:
            raise SpectralDegeneracy(
                f"no generic combination separated the degree-{m} slice at r={ctx.r}, alpha={ctx.alpha}"
            )
        self.t = t
        self.lam = lam
        self.combo = {
            c: self._combine(t, self.images[c]) for c in self.comps
        }

    @staticmethod
    def _combine(t, per_j) -> dict[Composition, Fraction]:
        out: dict[Composition, Fraction] = {}
        for tj, img in zip(t, per_j):
            for xi, coef in img.items():
                s = out.get(xi, 0) + tj * coef
                if s:
                    out[xi] = s
                else:
                    out.pop(xi, None)
        return out


class JackBasis:
    """Memoized family of E_eta for one (r, alpha, orientation)."""

    def __init__(self, ctx: AlphaContext, orientation: Orientation = DEFAULT_ORIENTATION):
        self.ctx = ctx
        self.orientation = orientation
        self._slices: dict[int, _SliceData] = {}
        self._eigen: dict[Composition, JackPolynomial] = {}
        self._lock = threading.Lock()

    def slice_data(self, m: int) -> _SliceData:
        sd = self._slices.get(m)
        if sd is None:
            sd = _SliceData(self.ctx, self.orientation, m)
            with self._lock:
                sd = self._slices.setdefault(m, sd)
        return sd

    def slice_compositions(self, m: int) -> list[Composition]:
        return list(self.slice_data(m).comps)

    def E(self, eta) -> JackPolynomial:
        eta = self.ctx.check_composition(eta)
        jp = self._eigen.get(eta)
        if jp is None:
            jp = self._solve(eta)
            with self._lock:
                jp = self._eigen.setdefault(eta, jp)
        return jp

    def _solve(self, eta: Composition) -> JackPolynomial:
        ctx = self.ctx
        sd = self.slice_data(weight(eta))
        down = [c for c in sd.comps if c == eta or compare_compositions(c, eta, self.orientation)]
        lam_eta = sd.lam[eta]
        coeffs: dict[Composition, Fraction] = {eta: Fraction(1)}
        acc: dict[Composition, Fraction] = dict(sd.combo[eta])
        for c in reversed(down):
            if c == eta:
                continue
            num = acc.get(c, Fraction(0))
            if num == 0:
                continue
            v = num / (lam_eta - sd.lam[c])
            coeffs[c] = v
            for xi, coef in sd.combo[c].items():
                s = acc.get(xi, 0) + v * coef
                if s:
                    acc[xi] = s
                else:
                    acc.pop(xi, None)
        spectral = spectral_vector(eta, ctx)
        # Exact verification of every eigen-relation before returning.
        for j in range(ctx.r):
            residual: dict[Composition, Fraction] = {}
            for c, v in coeffs.items():
                for xi, coef in sd.images[c][j].items():
                    s = residual.get(xi, 0) + v * coef
                    if s:
                        residual[xi] = s
                    else:
                        residual.pop(xi, None)
            for c, v in coeffs.items():
                s = residual.get(c, 0) - spectral[j] * v
                if s:
                    residual[c] = s
                else:
                    residual.pop(c, None)
            if residual:
                raise TriangularityError(
                    f"eigen-relation U_{j + 1} failed for eta={eta} (residual support {sorted(residual)[:4]})"
                )
        poly = SparsePolynomial(ctx.r, coeffs)
        return JackPolynomial(
            eta=eta,
            poly=poly,
            spectral=spectral,
            ones_value=poly.evaluate_ones(),
        )

    def calE(self, eta) -> SparsePolynomial:
        """E_eta normalized to value 1 at (1, ..., 1)."""
        jp = self.E(eta)
        if jp.ones_value == 0:
            raise InputError(f"E_{eta} vanishes at (1,...,1); cannot normalize")
        return jp.poly.scale(1 / jp.ones_value)

    def to_E_basis(self, p) -> dict[Composition, Fraction]:
        """Coefficients c_eta with p = sum c_eta E_eta, degree slice by
        degree slice, by back-substitution against the leading monomials."""
        if hasattr(p, "to_polynomial"):
            p = p.to_polynomial()
        if p.rank != self.ctx.r:
            raise InputError(f"rank {p.rank} does not match context r={self.ctx.r}")
        out: dict[Composition, Fraction] = {}
        for m, sl in p.homogeneous_slices().items():
            rem = dict(sl.terms)
            for c in reversed(self.slice_data(m).comps):
                coef = rem.pop(c, Fraction(0))
                if coef == 0:
                    continue
                out[c] = coef
                for xi, ev in self.E(c).poly.terms.items():
                    if xi == c:
                        continue
                    s = rem.get(xi, 0) - coef * ev
                    if s:
                        rem[xi] = s
                    else:
                        rem.pop(xi, None)
            if rem:
                raise RuntimeError(f"change of basis left a remainder in degree {m}: {sorted(rem)[:4]}")
        return out


_basis_cache: dict[tuple, JackBasis] = {}
_basis_lock = threading.Lock()


def jack_basis(ctx: AlphaContext, orientation: Orientation = DEFAULT_ORIENTATION) -> JackBasis:
    key = (ctx.r, ctx.alpha, orientation)
    basis = _basis_cache.get(key)
    if basis is None:
        basis = JackBasis(ctx, orientation)
        with _basis_lock:
            basis = _basis_cache.setdefault(key, basis)
    return basis


def nonsym_jack(eta, ctx: AlphaContext) -> JackPolynomial:
    return jack_basis(ctx).E(eta)


def normalized_jack(eta, ctx: AlphaContext) -> JackPolynomial:
    """Same eigenpolynomial scaled to value 1 at (1, ..., 1)."""
    jp = jack_basis(ctx).E(eta)
    return JackPolynomial(
        eta=jp.eta,
        poly=jack_basis(ctx).calE(eta),
        spectral=jp.spectral,
        ones_value=Fraction(1),
    )


def to_E_basis(p, ctx: AlphaContext, orientation: Orientation = DEFAULT_ORIENTATION):
    return jack_basis(ctx, orientation).to_E_basis(p)


def jack_shifted_eval(eta, ctx: AlphaContext, *, shift=0, w=None, ones_power: int = 0) -> SparsePolynomial:
    """calE_eta composed with an optional variable permutation w (one-line,
    1-based), then the shift x -> x + shift, then multiplied by
    (x_1 ... x_r)^ones_power. Covers the x^c * calE_sigma manipulations."""
    p = jack_basis(ctx).calE(eta)
    if w is not None:
        p = p.permute_vars(w)
    if shift:
        p = p.shift_vars(shift)
    if ones_power:
        if ones_power < 0:
            raise InputError("ones_power must be >= 0 in polynomial form")
        for j in range(1, ctx.r + 1):
            p = p.mul_var(j, ones_power)
    return p


def calibrate_orientation(max_weight: int = 4, rmax: int = 3, alphas=("1/2", "1", "2")) -> dict:
    """Build every E_eta for |eta| <= max_weight under both orientations
    and test the closed-form evaluation at (1,...,1). Returns a report
    {orientation: {"ok": bool, "failure": str | None}}. The shipped
    default is the one that passes; the other must fail."""
    from .ratio import rat

    report = {}
    for orientation in Orientation:
        ok = True
        failure = None
        for r in range(1, rmax + 1):
            for alpha in alphas:
                ctx = AlphaContext(r=r, alpha=rat(alpha))
                basis = JackBasis(ctx, orientation)
                for m in range(max_weight + 1):
                    try:
                        for eta in sorted_slice(r, m, orientation):
                            jp = basis.E(eta)
                            expected = evaluation_at_ones(eta, ctx)
                            if jp.ones_value != expected:
                                raise TriangularityError(
                                    f"E_{eta}(1^r) = {jp.ones_value} != {expected} at r={r}, alpha={alpha}"
                                )
                    except (TriangularityError, SpectralDegeneracy) as exc:
                        ok = False
                        failure = f"r={r} alpha={alpha} m={m}: {exc}"
                        break
                if not ok:
                    break
            if not ok:
                break
        report[orientation.value] = {"ok": ok, "failure": failure}
    return report
