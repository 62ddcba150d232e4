"""Command-line front end. Every subcommand prints one JSON document to
stdout. Exact quantities are rendered as rational strings ("3/2"), never
floats; floats appear only under `quad`. Output is deterministic: keys
are sorted and all tables are emitted in a fixed composition order.

Exit codes: 0 success / verification passed, 1 verification failed,
2 usage error.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from .binomial import binom_table, binom_w
from .errors import DegreeCheckFailure, InputError, ParameterError
from .expansions import (
    c_direct,
    c_formula,
    lemma41_residual,
    q_direct,
    q_poly,
    thm43_consistency,
)
from .jack import jack_basis
from .params import (
    AlphaContext,
    compositions_of_weight,
    hook_products,
    partitions_of_weight,
    pochhammer_alpha,
)
from .quad import QuadratureSpec, laguerre_gram, laplace_check_r1
from .special import hyp2f1_terminating, kernel_truncated, laguerre_poly, mp_value

MAX_DEG = 6


def _rat(s: str, what: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"{what} must be a rational like 3 or 1/2, got {s!r}")


def _ints(s: str, what: str) -> tuple:
    try:
        return tuple(int(x) for x in s.split(","))
    except ValueError:
        raise click.UsageError(f"{what} must be comma-separated integers, got {s!r}")


def _rats(s: str, what: str) -> tuple:
    return tuple(_rat(x, what) for x in s.split(","))


def _perm(s: str, r: int) -> tuple:
    img = _ints(s, "--w")
    if sorted(img) != list(range(1, r + 1)):
        raise click.UsageError(f"--w must be an image of 1..{r}, got {s!r}")
    return img


def _ctx(r: int, alpha: str) -> AlphaContext:
    try:
        return AlphaContext(r, _rat(alpha, "--alpha"))
    except InputError as ex:
        raise click.UsageError(str(ex))


def _deg(d: int) -> int:
    if d < 0 or d > MAX_DEG:
        raise click.UsageError(f"--deg must be between 0 and {MAX_DEG}, got {d}")
    return d


def _poly_json(p) -> list:
    return [
        {"exp": list(e), "coef": str(c)} for e, c in sorted(p.terms.items())
    ]


def _emit(doc) -> None:
    click.echo(json.dumps(doc, indent=2, sort_keys=True))


def _sorted_comps(r: int, cap: int) -> list:
    return [
        kap
        for m in range(cap + 1)
        for kap in compositions_of_weight(r, m)
    ]


def _guard(fn):
    try:
        return fn()
    except (InputError, ParameterError) as ex:
        raise click.UsageError(str(ex))


@click.group()
def main():
    """Exact computations and verification sweeps for the non-symmetric
    eigenpolynomial families."""


@main.command("e")
@click.option("--r", type=int, required=True)
@click.option("--alpha", required=True)
@click.option("--eta", required=True)
def cmd_e(r, alpha, eta):
    """Monic eigenpolynomial E_eta with its spectrum and 1-point value."""
    ctx = _ctx(r, alpha)
    ev = _ints(eta, "--eta")

    def run():
        jp = jack_basis(ctx).E(ev)
        return {
            "eta": list(ev),
            "r": r,
            "alpha": str(ctx.alpha),
            "poly": _poly_json(jp.poly),
            "ones_value": str(jp.ones_value),
            "spectrum": [str(x) for x in jp.spectral],
        }

    _emit(_guard(run))


@main.command("hooks")
@click.option("--r", type=int, required=True)
@click.option("--alpha", required=True)
@click.option("--eta", required=True)
def cmd_hooks(r, alpha, eta):
    """Hook products d, d', e of a composition."""
    ctx = _ctx(r, alpha)
    ev = _ints(eta, "--eta")

    def run():
        h = hook_products(ev, ctx)
        return {"d": str(h.d), "d_prime": str(h.d_prime), "e": str(h.e)}

    _emit(_guard(run))


@main.command("binom")
@click.option("--r", type=int, required=True)
@click.option("--alpha", required=True)
@click.option("--eta", required=True)
@click.option("--nu", required=True)
def cmd_binom(r, alpha, eta, nu):
    """Binomial coefficient binom(eta, nu) from the shifted expansion."""
    ctx = _ctx(r, alpha)
    ev = _ints(eta, "--eta")
    nv = _ints(nu, "--nu")

    def run():
        val = binom_table(ev, ctx).get(nv, Fraction(0))
        return {"eta": list(ev), "nu": list(nv), "value": str(val)}

    _emit(_guard(run))


@main.command("binom-w")
@click.option("--r", type=int, required=True)
@click.option("--alpha", required=True)
@click.option("--eta", required=True)
@click.option("--nu", required=True)
@click.option("--w", "wimg", required=True, help="permutation as image list, e.g. 2,1")
def cmd_binom_w(r, alpha, eta, nu, wimg):
    """Twisted binomial binom(eta, nu)_w by the operator route."""
    ctx = _ctx(r, alpha)
    ev = _ints(eta, "--eta")
    nv = _ints(nu, "--nu")
    w = _perm(wimg, r)

    def run():
        return {
            "eta": list(ev),
            "nu": list(nv),
            "w": list(w),
            "value": str(binom_w(ev, nv, w, ctx)),
        }

    _emit(_guard(run))


@main.command("laguerre")
@click.option("--r", type=int, required=True)
@click.option("--alpha", required=True)
@click.option("--kappa", required=True)
@click.option("--b", required=True)
def cmd_laguerre(r, alpha, kappa, b):
    """Laguerre-type eigenpolynomial of index kappa."""
    ctx = _ctx(r, alpha)
    kv = _ints(kappa, "--kappa")
    bv = _rat(b, "--b")

    def run():
        return {
            "kappa": list(kv),
            "b": str(bv),
            "poly": _poly_json(laguerre_poly(kv, bv, ctx)),
        }

    _emit(_guard(run))


@main.command("mp")
@click.option("--r", type=int, required=True)
@click.option("--alpha", required=True)
@click.option("--kappa", required=True)
@click.option("--b", required=True)
@click.option("--lam", "--lambda", "lam", required=True, help="comma-separated rationals")
@click.option("--w", "wimg", default=None, help="permutation as image list")
def cmd_mp(r, alpha, kappa, b, lam, wimg):
    """Discrete-transform polynomial M_kappa^w at a rational argument."""
    ctx = _ctx(r, alpha)
    kv = _ints(kappa, "--kappa")
    bv = _rat(b, "--b")
    lv = _rats(lam, "--lam")
    w = _perm(wimg, r) if wimg else None

    def run():
        res = mp_value(kv, lv, w, bv, ctx)
        return {
            "kappa": list(kv),
            "b": str(bv),
            "lambda": [str(x) for x in lv],
            "w": list(res.w),
            "value": str(res.value),
        }

    _emit(_guard(run))


@main.command("kernel")
@click.option("--r", type=int, required=True)
@click.option("--alpha", required=True)
@click.option("--deg", type=int, default=3, show_default=True)
def cmd_kernel(r, alpha, deg):
    """Truncated bilinear exponential kernel as a rank-2r polynomial."""
    ctx = _ctx(r, alpha)
    d = _deg(deg)

    def run():
        kt = kernel_truncated(d, ctx)
        return {"r": r, "deg": d, "terms": _poly_json(kt.bipolynomial())}

    _emit(_guard(run))


@main.group()
def verify():
    """Exact verification sweeps; exit 1 if any row fails."""


def _finish(doc, passed: bool):
    doc["pass"] = bool(passed)
    _emit(doc)
    if not passed:
        sys.exit(1)


def _run_verify(run):
    # a failed internal stability recheck is a verification failure,
    # not a usage error
    try:
        doc, ok = _guard(run)
    except DegreeCheckFailure as ex:
        _emit({"error": str(ex), "pass": False})
        sys.exit(1)
    _finish(doc, ok)


@verify.command("lemma41")
@click.option("--r", type=int, required=True)
@click.option("--alpha", required=True)
@click.option("--b", type=int, required=True)
@click.option("--deg", type=int, default=3, show_default=True)
def verify_lemma41(r, alpha, b, deg):
    """Residual of the Laguerre generating identity (must be zero)."""
    ctx = _ctx(r, alpha)
    d = _deg(deg)

    def run():
        res = lemma41_residual(d, b, ctx)
        return {
            "r": r,
            "alpha": str(ctx.alpha),
            "b": b,
            "deg": d,
            "residual_terms": _poly_json(res),
        }, res.is_zero()

    _run_verify(run)


@verify.command("lemma42")
@click.option("--r", type=int, required=True)
@click.option("--alpha", required=True)
@click.option("--b", type=int, required=True)
@click.option("--eta", required=True)
@click.option("--deg", type=int, default=3, show_default=True)
def verify_lemma42(r, alpha, b, eta, deg):
    """Series route vs finite-sum route for the Cayley coefficients."""
    ctx = _ctx(r, alpha)
    ev = _ints(eta, "--eta")
    d = _deg(deg)

    def run():
        direct = c_direct(ev, b, d, ctx)
        rows = []
        ok = True
        for kap in _sorted_comps(r, d):
            vd = direct.get(kap, Fraction(0))
            vf = c_formula(ev, kap, b, ctx)
            rows.append(
                {
                    "kappa": list(kap),
                    "direct": str(vd),
                    "formula": str(vf),
                    "equal": vd == vf,
                }
            )
            ok = ok and vd == vf
        return {"eta": list(ev), "b": b, "deg": d, "rows": rows}, ok

    _run_verify(run)


@verify.command("thm43")
@click.option("--r", type=int, required=True)
@click.option("--alpha", required=True)
@click.option("--b", type=int, required=True)
@click.option("--eta", required=True)
@click.option("--deg", type=int, default=3, show_default=True)
def verify_thm43(r, alpha, b, eta, deg):
    """Three-way consistency of the Cayley coefficients with the M family."""
    ctx = _ctx(r, alpha)
    ev = _ints(eta, "--eta")
    d = _deg(deg)

    def run():
        rep = thm43_consistency(ev, b, d, ctx)
        rows = []
        for kap in _sorted_comps(r, d):
            vd, vf, vm = rep.rows[kap]
            rows.append(
                {
                    "kappa": list(kap),
                    "direct": str(vd),
                    "formula": str(vf),
                    "via_mp": str(vm),
                    "equal": vd == vf == vm,
                }
            )
        return {"eta": list(ev), "b": b, "deg": d, "rows": rows}, rep.passed

    _run_verify(run)


@verify.command("mp1var")
@click.option("--b", type=int, default=2, show_default=True)
@click.option("--kmax", type=int, default=6, show_default=True)
def verify_mp1var(b, kmax):
    """One-variable reduction of M against the terminating 2F1 sum."""
    ctx = AlphaContext(1, Fraction(1))
    lams = [Fraction(0), Fraction(1), Fraction(-2), Fraction(1, 2),
            Fraction(-1, 2), Fraction(3, 4), Fraction(5), Fraction(-7, 3)]

    def run():
        rows = []
        ok = True
        for k in range(kmax + 1):
            for lam in lams:
                got = mp_value((k,), (lam,), None, b, ctx).value
                want = (
                    pochhammer_alpha((Fraction(b),), (k,), ctx)
                    * Fraction(-1) ** k
                    * hyp2f1_terminating(k, Fraction(b, 2) - lam, Fraction(b), Fraction(2))
                )
                rows.append(
                    {
                        "k": k,
                        "lambda": str(lam),
                        "mp": str(got),
                        "hyp2f1_form": str(want),
                        "equal": got == want,
                    }
                )
                ok = ok and got == want
        return {"b": b, "rows": rows}, ok

    _run_verify(run)


@verify.command("sym-q")
@click.option("--r", type=int, required=True)
@click.option("--alpha", required=True)
@click.option("--b", type=int, required=True)
@click.option("--eta", required=True, help="partition with eta_j >= b/2")
@click.option("--deg", type=int, default=3, show_default=True)
def verify_sym_q(r, alpha, b, eta, deg):
    """Symmetric-layer expansion table and symmetry of the interpolant."""
    ctx = _ctx(r, alpha)
    ev = _ints(eta, "--eta")
    d = _deg(deg)

    def run():
        table = q_direct(ev, b, d, ctx)
        rows = []
        ok = True
        for m in range(d + 1):
            for kap in partitions_of_weight(r, m):
                val = table.get(kap, Fraction(0))
                entry = {"kappa": list(kap), "value": str(val)}
                if m <= 2:
                    bp = q_poly(kap, b, ctx)
                    sym = all(
                        bp.poly.permute_vars(w) == bp.poly
                        for w in _transpositions(r)
                    )
                    entry["interpolant_symmetric"] = sym
                    entry["interpolant_matches"] = bp.evaluate(ev) == val
                    ok = ok and sym and entry["interpolant_matches"]
                rows.append(entry)
        return {"eta": list(ev), "b": b, "deg": d, "rows": rows}, ok

    _run_verify(run)


def _transpositions(r: int):
    out = []
    for i in range(1, r):
        img = list(range(1, r + 1))
        img[i - 1], img[i] = img[i], img[i - 1]
        out.append(tuple(img))
    return out


@main.group()
def quad():
    """Floating-point quadrature checks; exit 1 if out of tolerance."""


@quad.command("ortho")
@click.option("--r", type=int, required=True)
@click.option("--alpha", required=True)
@click.option("--b", required=True)
@click.option("--max-weight", "mw", type=int, default=2, show_default=True)
@click.option("--nodes", type=int, default=32, show_default=True)
@click.option("--tol", type=float, default=0.0, help="override the per-r default")
def quad_ortho(r, alpha, b, mw, nodes, tol):
    """Normalized Gram matrix of the Laguerre functions."""
    ctx = _ctx(r, alpha)
    bv = _rat(b, "--b")

    def run():
        spec = QuadratureSpec(r=r, nodes=nodes, tol=tol)
        rep = laguerre_gram(mw, bv, spec, ctx)
        return {
            "r": r,
            "alpha": str(ctx.alpha),
            "b": str(bv),
            "max_weight": mw,
            "nodes": nodes,
            "tol": spec.tol,
            "kappas": [list(k) for k in rep.kappas],
            "gram_normalized": rep.matrix,
            "max_offdiag": rep.max_offdiag,
            "all_converged": rep.all_converged,
        }, rep.passed

    _run_verify(run)


@quad.command("laplace")
@click.option("--c", required=True, help="rational exponent > 0")
@click.option("--l", type=int, default=0, show_default=True)
@click.option("--nodes", type=int, default=32, show_default=True)
@click.option("--tol", type=float, default=0.0)
def quad_laplace(c, l, nodes, tol):
    """One-variable transform power-law check and constant fit."""
    cv = _rat(c, "--c")

    def run():
        spec = QuadratureSpec(r=1, nodes=nodes, tol=tol)
        rep = laplace_check_r1(cv, l, spec)
        return {
            "c": str(cv),
            "l": l,
            "nodes": nodes,
            "tol": spec.tol,
            "n0_estimate": rep.n0,
            "residual": rep.residual,
        }, rep.passed

    _run_verify(run)


if __name__ == "__main__":
    main()
