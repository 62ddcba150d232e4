"""Exact calculus for non-symmetric Jack polynomials and the special
function families built on them.

Everything outside :mod:`jackcalc.quad` works over ``fractions.Fraction``;
results are exact and reproducible bit for bit. The quadrature layer is
the single place floating point enters.
"""

from .binomial import (
    BinomialPolynomial,
    binom_laurent,
    binom_poly,
    binom_table,
    binom_w,
    binom_w_table,
    interpolate_spectral,
    principal_lattice,
)
from .errors import (
    DegreeCheckFailure,
    InputError,
    ParameterError,
    SpectralDegeneracy,
    TriangularityError,
)
from .expansions import (
    ConsistencyReport,
    c_direct,
    c_formula,
    lemma41_residual,
    q_direct,
    q_poly,
    sym_jack,
    thm43_consistency,
    to_omega_basis,
)
from .jack import (
    JackBasis,
    JackPolynomial,
    jack_basis,
    nonsym_jack,
    normalized_jack,
    spectral_vector,
    to_E_basis,
)
from .operators import apply_cherednik, apply_dunkl, apply_dunkl_poly, apply_permutation
from .params import (
    AlphaContext,
    HookProducts,
    compositions_of_weight,
    evaluation_at_ones,
    hook_products,
    partitions_of_weight,
    pochhammer_alpha,
)
from .poly import SparsePolynomial
from .quad import (
    GramReport,
    LaplaceReport,
    QuadResult,
    QuadratureSpec,
    inner_product_dmu,
    laguerre_gram,
    laplace_check_r1,
    laplace_error_estimate,
)
from .special import (
    KernelTable,
    LaguerreFunction,
    MPValue,
    hyp2f1_terminating,
    kernel_truncated,
    laguerre_function,
    laguerre_poly,
    mp_value,
    pochhammer_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaContext",
    "BinomialPolynomial",
    "ConsistencyReport",
    "DegreeCheckFailure",
    "GramReport",
    "HookProducts",
    "InputError",
    "JackBasis",
    "JackPolynomial",
    "KernelTable",
    "LaguerreFunction",
    "LaplaceReport",
    "MPValue",
    "ParameterError",
    "QuadResult",
    "QuadratureSpec",
    "SparsePolynomial",
    "SpectralDegeneracy",
    "TriangularityError",
    "apply_cherednik",
    "apply_dunkl",
    "apply_dunkl_poly",
    "apply_permutation",
    "binom_laurent",
    "binom_poly",
    "binom_table",
    "binom_w",
    "binom_w_table",
    "c_direct",
    "c_formula",
    "compositions_of_weight",
    "evaluation_at_ones",
    "hook_products",
    "hyp2f1_terminating",
    "inner_product_dmu",
    "interpolate_spectral",
    "jack_basis",
    "kernel_truncated",
    "laguerre_function",
    "laguerre_gram",
    "laguerre_poly",
    "laplace_check_r1",
    "laplace_error_estimate",
    "lemma41_residual",
    "mp_value",
    "nonsym_jack",
    "normalized_jack",
    "partitions_of_weight",
    "pochhammer_alpha",
    "pochhammer_ratio",
    "principal_lattice",
    "q_direct",
    "q_poly",
    "spectral_vector",
    "sym_jack",
    "thm43_consistency",
    "to_E_basis",
    "to_omega_basis",
    "__version__",
]
