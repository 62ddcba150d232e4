"""Sparse polynomial and truncated series arithmetic.

The oracle throughout is sympy: every nontrivial operation is replayed
on sympy expressions over QQ and compared coefficient by coefficient.
Inputs are fixed small polynomials, no randomness.
"""

from fractions import Fraction

import pytest
import sympy as sp

from jackcalc import InputError, SparsePolynomial
from jackcalc.poly import (
    TruncatedSeries,
    cayley_series,
    cayley_series_even_weight,
    geometric_substitution_series,
)

X1, X2 = sp.symbols("x1 x2")
Z = sp.symbols("z")


def to_sympy(p: SparsePolynomial, syms):
    expr = sp.Integer(0)
    for e, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            term *= s**k
        expr += term
    return sp.expand(expr)


def from_series(expr, cap: int):
    """Coefficient dict of a one-variable sympy expression through z^cap."""
    poly = sp.Poly(sp.series(expr, Z, 0, cap + 1).removeO(), Z)
    out = {}
    for (k,), c in poly.terms():
        out[(int(k),)] = Fraction(int(sp.numer(c)), int(sp.denom(c)))
    return out


P = SparsePolynomial(
    2, {(2, 1): Fraction(2), (1, 1): Fraction(-3, 2), (0, 0): Fraction(5)}
)
Q = SparsePolynomial(2, {(1, 0): Fraction(1), (0, 2): Fraction(-1)})


def test_mul_matches_sympy():
    got = to_sympy(P * Q, (X1, X2))
    want = sp.expand(to_sympy(P, (X1, X2)) * to_sympy(Q, (X1, X2)))
    assert got == want


def test_add_sub_neg():
    assert to_sympy(P + Q, (X1, X2)) == to_sympy(P, (X1, X2)) + to_sympy(Q, (X1, X2))
    assert to_sympy(P - Q, (X1, X2)) == to_sympy(P, (X1, X2)) - to_sympy(Q, (X1, X2))
    assert (P - P).is_zero()
    assert to_sympy(-Q, (X1, X2)) == -to_sympy(Q, (X1, X2))


def test_partial_matches_sympy():
    # variable indices are 1-based throughout
    for j, s in ((1, X1), (2, X2)):
        assert to_sympy(P.partial(j), (X1, X2)) == sp.diff(to_sympy(P, (X1, X2)), s)


def test_evaluate_matches_sympy():
    pt = (Fraction(2, 3), Fraction(-1, 2))
    want = to_sympy(P, (X1, X2)).subs({X1: sp.Rational(2, 3), X2: sp.Rational(-1, 2)})
    got = P.evaluate(pt)
    assert sp.Rational(got.numerator, got.denominator) == want
    assert P.evaluate_ones() == P.evaluate((1, 1))


def test_shift_vars_matches_sympy():
    got = to_sympy(P.shift_vars(Fraction(1, 2)), (X1, X2))
    want = sp.expand(
        to_sympy(P, (X1, X2)).subs(
            {X1: X1 + sp.Rational(1, 2), X2: X2 + sp.Rational(1, 2)}, simultaneous=True
        )
    )
    assert got == want


def test_scale_and_permute():
    assert to_sympy(P.scale_vars(Fraction(-2)), (X1, X2)) == sp.expand(
        to_sympy(P, (X1, X2)).subs({X1: -2 * X1, X2: -2 * X2}, simultaneous=True)
    )
    assert to_sympy(P.permute_vars((2, 1)), (X1, X2)) == to_sympy(P, (X2, X1))
    assert P.permute_vars((1, 2)) == P
    assert P.swap_vars(0, 1) == P.permute_vars((2, 1))


def test_mul_var_and_monomial():
    assert P.mul_var(1, 2) == P * SparsePolynomial.monomial(2, (2, 0))
    v = SparsePolynomial.variable(3, 2)
    assert v.terms == {(0, 1, 0): Fraction(1)}


def test_homogeneous_slices():
    slices = P.homogeneous_slices()
    assert set(slices) == {0, 2, 3}
    assert sum(slices.values(), SparsePolynomial.zero(2)) == P
    assert P.homogeneous_slice(1).is_zero()
    assert P.total_degree() == 3


def test_tensor_ranks():
    t = P.tensor(Q)
    assert t.rank == 4
    assert t.terms[(2, 1, 1, 0)] == Fraction(2)


def test_rank_mismatch_raises():
    with pytest.raises(InputError):
        P + SparsePolynomial.zero(3)


# series layer


def test_truncated_series_product_truncates():
    one_minus = SparsePolynomial(1, {(0,): Fraction(1), (1,): Fraction(-1)})
    geom = TruncatedSeries(1, 4, {(k,): Fraction(1) for k in range(5)})
    prod = TruncatedSeries.from_polynomial(one_minus, 4) * geom
    assert prod.terms == {(0,): Fraction(1)}


def test_geometric_substitution_one_variable():
    # (1-z)^{-3} * (z/(1-z))^2 == z^2 (1-z)^{-5}
    p = SparsePolynomial.monomial(1, (2,))
    got = geometric_substitution_series(p, 3, 6).terms
    want = from_series(Z**2 / (1 - Z) ** 5, 6)
    assert got == want


def test_cayley_one_variable():
    # (1-z)^{-2} * (1-z)/(1+z) == (1-z)^{-1} (1+z)^{-1}
    p = SparsePolynomial.monomial(1, (1,))
    got = cayley_series(p, 2, 6).terms
    want = from_series(1 / ((1 - Z) * (1 + Z)), 6)
    assert got == want


def test_cayley_even_weight_one_variable():
    # (1-z^2)^{-1} * (1-z)/(1+z) == (1+z)^{-2}
    p = SparsePolynomial.monomial(1, (1,))
    got = cayley_series_even_weight(p, 1, 6).terms
    want = from_series((1 + Z) ** (-2), 6)
    assert got == want


def test_cayley_rejects_odd_b():
    with pytest.raises(InputError):
        cayley_series(SparsePolynomial.monomial(1, (1,)), 3, 4)


def test_two_variable_series_is_per_axis_product():
    # the maps act independently per variable, so a two-variable monomial
    # must expand to the product of its one-variable expansions
    p = SparsePolynomial.monomial(2, (1, 2), Fraction(3, 4))
    cap = 5
    got = geometric_substitution_series(p, 2, cap).terms
    ax1 = from_series(Z / (1 - Z) ** 3, cap)
    ax2 = from_series(Z**2 / (1 - Z) ** 4, cap)
    want = {}
    for (i,), ci in ax1.items():
        for (j,), cj in ax2.items():
            if i + j <= cap:
                want[(i, j)] = Fraction(3, 4) * ci * cj
    assert got == want
