"""Dunkl and Cherednik operators.

Oracle: the displayed rational-function formulas replayed in sympy with
honest division and cancellation. The package never divides polynomials
(it uses the geometric-sum form of divided differences), so agreement
here is a genuine two-route check.
"""

from fractions import Fraction

import pytest
import sympy as sp

from jackcalc import AlphaContext, InputError, SparsePolynomial
from jackcalc import apply_cherednik, apply_dunkl, apply_dunkl_poly, apply_permutation
from jackcalc.operators import divided_difference

SYMS = sp.symbols("x1 x2 x3")


def to_sympy(p: SparsePolynomial):
    expr = sp.Integer(0)
    for e, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for s, k in zip(SYMS, e):
            term *= s**k
        expr += term
    return sp.expand(expr)


def swap(expr, i, j):
    a, b = SYMS[i - 1], SYMS[j - 1]
    return expr.subs({a: b, b: a}, simultaneous=True)


def oracle_dunkl(expr, j, r, alpha):
    xj = SYMS[j - 1]
    out = sp.diff(expr, xj)
    for i in range(1, r + 1):
        if i != j:
            out += (expr - swap(expr, i, j)) / (alpha * (xj - SYMS[i - 1]))
    return sp.cancel(sp.together(out))


def oracle_cherednik(expr, j, r, alpha):
    xj = SYMS[j - 1]
    rho_j = sp.Rational(2 * j - r - 1) / alpha
    out = xj * sp.diff(expr, xj) - rho_j / 2 * expr
    for i in range(1, j):
        out += xj * (expr - swap(expr, i, j)) / (alpha * (xj - SYMS[i - 1]))
    for k in range(j + 1, r + 1):
        out += SYMS[k - 1] * (expr - swap(expr, j, k)) / (alpha * (xj - SYMS[k - 1]))
    return sp.cancel(sp.together(out))


MONOMIALS_R2 = [(0, 0), (1, 0), (0, 1), (2, 1), (1, 3), (2, 2)]
MONOMIALS_R3 = [(1, 0, 2), (2, 1, 0), (0, 1, 1), (3, 0, 0)]


@pytest.mark.parametrize("alpha", [sp.Rational(1, 2), sp.Integer(1), sp.Integer(2)])
def test_dunkl_matches_rational_formula_r2(alpha):
    ctx = AlphaContext(2, Fraction(int(sp.numer(alpha)), int(sp.denom(alpha))))
    for e in MONOMIALS_R2:
        p = SparsePolynomial.monomial(2, e)
        for j in (1, 2):
            got = to_sympy(apply_dunkl(p, j, ctx))
            want = oracle_dunkl(to_sympy(p), j, 2, alpha)
            assert sp.expand(got - want) == 0, (e, j, alpha)


def test_dunkl_matches_rational_formula_r3():
    alpha = sp.Rational(3, 2)
    ctx = AlphaContext(3, Fraction(3, 2))
    for e in MONOMIALS_R3:
        p = SparsePolynomial.monomial(3, e)
        for j in (1, 2, 3):
            got = to_sympy(apply_dunkl(p, j, ctx))
            want = oracle_dunkl(to_sympy(p), j, 3, alpha)
            assert sp.expand(got - want) == 0, (e, j)


@pytest.mark.parametrize("alpha", [sp.Rational(1, 2), sp.Integer(1), sp.Integer(2)])
def test_cherednik_matches_rational_formula_r2(alpha):
    ctx = AlphaContext(2, Fraction(int(sp.numer(alpha)), int(sp.denom(alpha))))
    for e in MONOMIALS_R2:
        p = SparsePolynomial.monomial(2, e)
        for j in (1, 2):
            got = to_sympy(apply_cherednik(p, j, ctx))
            want = oracle_cherednik(to_sympy(p), j, 2, alpha)
            assert sp.expand(got - want) == 0, (e, j, alpha)


def test_cherednik_matches_rational_formula_r3():
    alpha = sp.Integer(2)
    ctx = AlphaContext(3, Fraction(2))
    for e in MONOMIALS_R3:
        p = SparsePolynomial.monomial(3, e)
        for j in (1, 2, 3):
            got = to_sympy(apply_cherednik(p, j, ctx))
            want = oracle_cherednik(to_sympy(p), j, 3, alpha)
            assert sp.expand(got - want) == 0, (e, j)


def test_divided_difference_no_remainder():
    # (p - swap p) must be exactly divisible; spot-check the quotient
    p = SparsePolynomial(2, {(3, 0): Fraction(1), (1, 1): Fraction(4)})
    dd = divided_difference(p, 1, 2)
    want = sp.cancel(
        (to_sympy(p) - swap(to_sympy(p), 1, 2)) / (SYMS[1] - SYMS[0])
    )
    assert sp.expand(to_sympy(dd) - want) == 0


def test_dunkl_lowers_degree():
    ctx = AlphaContext(3, Fraction(1, 2))
    p = SparsePolynomial.monomial(3, (2, 0, 1))
    for j in (1, 2, 3):
        q = apply_dunkl(p, j, ctx)
        assert q.is_zero() or q.total_degree() == p.total_degree() - 1


def test_dunkl_operators_commute():
    ctx = AlphaContext(3, Fraction(2, 3))
    p = SparsePolynomial(3, {(2, 1, 0): Fraction(1), (0, 0, 3): Fraction(-2)})
    for a in (1, 2, 3):
        for b in range(a + 1, 4):
            ab = apply_dunkl(apply_dunkl(p, b, ctx), a, ctx)
            ba = apply_dunkl(apply_dunkl(p, a, ctx), b, ctx)
            assert ab == ba


def test_cherednik_operators_commute():
    ctx = AlphaContext(3, Fraction(3, 4))
    p = SparsePolynomial(3, {(1, 2, 0): Fraction(1), (0, 1, 1): Fraction(5)})
    for a in (1, 2, 3):
        for b in range(a + 1, 4):
            ab = apply_cherednik(apply_cherednik(p, b, ctx), a, ctx)
            ba = apply_cherednik(apply_cherednik(p, a, ctx), b, ctx)
            assert ab == ba


def test_dunkl_poly_expands_monomials_in_t():
    # p(T) for p = t1*t2 + 2 must equal T1 T2 target + 2 target
    ctx = AlphaContext(2, Fraction(1))
    coeff = SparsePolynomial(2, {(1, 1): Fraction(1), (0, 0): Fraction(2)})
    target = SparsePolynomial.monomial(2, (2, 1))
    got = apply_dunkl_poly(coeff, target, ctx)
    want = apply_dunkl(apply_dunkl(target, 2, ctx), 1, ctx) + target.scale(2)
    assert got == want


def test_apply_permutation_one_line_notation():
    p = SparsePolynomial.monomial(3, (1, 2, 0))
    q = apply_permutation(p, (2, 3, 1))
    assert q.total_degree() == 3
    assert apply_permutation(q, (3, 1, 2)) == p


def test_bad_indices_raise():
    ctx = AlphaContext(2, Fraction(1))
    p = SparsePolynomial.monomial(2, (1, 0))
    with pytest.raises(InputError):
        apply_dunkl(p, 0, ctx)
    with pytest.raises(InputError):
        apply_cherednik(p, 3, ctx)
    with pytest.raises(InputError):
        divided_difference(p, 2, 1)
